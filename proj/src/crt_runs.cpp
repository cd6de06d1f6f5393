#include "esc/crt_runs.hpp"

#include <random>

#include "json.hpp"

namespace esc {

RunCertificate build_run(unsigned long length, const WideInt& start_beta) {
    if (length < 1) throw std::domain_error("build_run: length must be >= 1");
    if (start_beta < 0) throw std::domain_error("build_run: start_beta must be >= 0");

    RunCertificate cert;
    cert.length = length;
    std::vector<Congruence> system;
    WideInt max_residue = 0;
    for (unsigned long i = 0; i < length; ++i) {
        WideInt beta = start_beta + i;
        cert.betas.push_back(beta);
        system.push_back({4 * beta + 3, 3 * beta + 2});
        if (3 * beta + 2 > max_residue) max_residue = 3 * beta + 2;
    }
    Congruence sol = crt_solve(system);
    WideInt T = sol.residue;
    if (T < 1) T += sol.modulus;
    while (T < max_residue) T += sol.modulus;
    cert.T = T;
    for (const auto& beta : cert.betas) {
        cert.gammas.push_back((T - (3 * beta + 2)) / (4 * beta + 3));
        cert.q_classes.push_back({T, T - beta - 2});
    }
    return cert;
}

bool verify_run(const RunCertificate& cert, unsigned samples) {
    if (cert.length < 1 || cert.betas.size() != cert.length ||
        cert.gammas.size() != cert.length || cert.q_classes.size() != cert.length)
        throw std::invalid_argument("verify_run: malformed certificate");
    for (unsigned long i = 0; i < cert.length; ++i) {
        const WideInt& beta = cert.betas[i];
        if (beta < 0 || cert.gammas[i] < 0)
            throw std::invalid_argument("verify_run: negative parameter");
        if (cert.T % (4 * beta + 3) != (3 * beta + 2) % (4 * beta + 3))
            throw std::invalid_argument("verify_run: T violates its congruence");
        if ((4 * beta + 3) * cert.gammas[i] + 3 * beta + 2 != cert.T)
            throw std::invalid_argument("verify_run: gamma does not reconstruct T");
        if (cert.q_classes[i].modulus != cert.T ||
            cert.q_classes[i].residue != cert.T - beta - 2)
            throw std::invalid_argument("verify_run: q class mismatch");
    }

    std::mt19937_64 rng(0x657363u);  // fixed seed: reproducible sampling
    std::uniform_int_distribution<std::uint64_t> draw(0, 1u << 20);
    for (unsigned long i = 0; i < cert.length; ++i) {
        const WideInt& beta = cert.betas[i];
        const WideInt& gamma = cert.gammas[i];
        for (unsigned s = 0; s < samples; ++s) {
            WideInt k = static_cast<unsigned long>(draw(rng));
            WideInt q = cert.q_classes[i].residue + k * cert.T;
            WideInt alpha = (q + beta + 2) / cert.T - 1;
            if (alpha < 0) return false;
            if (q_poly(alpha, beta, gamma) != q) return false;
            Decomposition d = type1_from_abc(alpha + 1, 4 * beta + 3, 4 * gamma + 3);
            if (d.n != 4 * q + 5 || !verify_decomposition(d)) return false;
        }
    }
    return true;
}

Type2Run build_type2_run(const std::vector<WideInt>& a_values) {
    if (a_values.empty()) throw std::domain_error("build_type2_run: empty input");
    Type2Run run;
    std::vector<WideInt> factors;
    std::vector<std::pair<WideInt, WideInt>> square_free;  // (β(a), γ(a))
    for (const auto& a : a_values) {
        if (a < 1) throw std::domain_error("build_type2_run: a must be >= 1");
        WideInt beta = 1, gamma = 1;
        for (const auto& [p, e] : factorize(a)) {
            for (unsigned k = 0; k < e / 2; ++k) beta *= p;
            if (e & 1) gamma *= p;
        }
        square_free.emplace_back(beta, gamma);
        factors.push_back(4 * beta * gamma - 1);
    }
    run.T = lcm_list(factors);
    run.delta = (run.T % 4 == 1) ? 1 : 3;
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        WideInt n = run.T * run.delta - 4 * a_values[i];
        if (n < 2)
            throw std::domain_error("build_type2_run: member below 2 for a = " +
                                    a_values[i].get_str());
        const auto& [beta, gamma] = square_free[i];
        ParamWitness w{WitnessFamily::TypeIIParametric,
                       {WideInt(1), beta, gamma, run.delta * (run.T / factors[i])}};
        if (!check_witness(n, w))
            throw std::logic_error("build_type2_run: witness failed for n = " + n.get_str());
        run.members.push_back(n);
        run.witnesses.push_back(std::move(w));
    }
    return run;
}

std::string run_certificate_to_json(const RunCertificate& cert) {
    nlohmann::json j;
    j["length"] = cert.length;
    auto strs = [](const std::vector<WideInt>& v) {
        std::vector<std::string> out;
        for (const auto& x : v) out.push_back(x.get_str());
        return out;
    };
    j["betas"] = strs(cert.betas);
    j["T"] = cert.T.get_str();
    j["gammas"] = strs(cert.gammas);
    auto& qc = j["q_classes"] = nlohmann::json::array();
    for (const auto& c : cert.q_classes)
        qc.push_back({c.modulus.get_str(), c.residue.get_str()});
    return j.dump();
}

RunCertificate run_certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunCertificate cert;
    cert.length = j.at("length").get<unsigned long>();
    for (const auto& s : j.at("betas")) cert.betas.emplace_back(s.get<std::string>());
    cert.T = WideInt(j.at("T").get<std::string>());
    for (const auto& s : j.at("gammas")) cert.gammas.emplace_back(s.get<std::string>());
    for (const auto& pair : j.at("q_classes")) {
        cert.q_classes.push_back({WideInt(pair.at(0).get<std::string>()),
                                  WideInt(pair.at(1).get<std::string>())});
    }
    return cert;
}

}  // namespace esc
