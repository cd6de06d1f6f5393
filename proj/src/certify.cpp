#include "esc/certify.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace esc {

namespace {

constexpr const char* kMethodNames[kMethodCount] = {
    "even-reduce", "two-term-3mod4", "composite-factor",
    "sieve-class", "greedy",         "witness-search",
};

void ensure_valid(const Certificate& c) {
    Decomposition d{c.n, 4, c.x, c.y, c.z, c.kind};
    if (!verify_decomposition(d))
        throw std::logic_error("certificate for n = " + c.n.get_str() +
                               " failed re-verification at build time");
}

}  // namespace

const char* method_name(Method m) { return kMethodNames[static_cast<unsigned>(m)]; }

std::optional<Method> method_from_name(const std::string& s) {
    for (unsigned i = 0; i < kMethodCount; ++i)
        if (s == kMethodNames[i]) return static_cast<Method>(i);
    return std::nullopt;
}

std::string certificate_to_json_line(const Certificate& c) {
    std::string out = "{\"n\":\"" + c.n.get_str() + "\",\"method\":\"" +
                      method_name(c.method) + "\",\"x\":\"" + c.x.get_str() + "\",\"y\":\"" +
                      c.y.get_str() + "\"";
    if (c.z) out += ",\"z\":\"" + c.z->get_str() + "\"";
    if (c.witness) {
        out += ",\"witness\":{\"family\":\"";
        out += witness_family_name(c.witness->family);
        out += "\",\"params\":[";
        for (std::size_t i = 0; i < c.witness->params.size(); ++i) {
            if (i) out += ',';
            out += '"' + c.witness->params[i].get_str() + '"';
        }
        out += "]}";
    }
    out += "}";
    return out;
}

Certificate certificate_from_json_line(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    Certificate c;
    c.n = WideInt(j.at("n").get<std::string>());
    auto m = method_from_name(j.at("method").get<std::string>());
    if (!m) throw std::runtime_error("unknown method '" + j.at("method").get<std::string>() + "'");
    c.method = *m;
    c.x = WideInt(j.at("x").get<std::string>());
    c.y = WideInt(j.at("y").get<std::string>());
    if (j.contains("z")) c.z = WideInt(j.at("z").get<std::string>());
    if (j.contains("witness")) {
        const auto& w = j.at("witness");
        auto fam = witness_family_from_name(w.at("family").get<std::string>());
        if (!fam) throw std::runtime_error("unknown witness family");
        ParamWitness pw{*fam, {}};
        for (const auto& p : w.at("params")) pw.params.emplace_back(p.get<std::string>());
        c.witness = std::move(pw);
    }
    c.kind = c.z ? DecompKind::General : DecompKind::TwoTerm;
    return c;
}

std::string VerifyOptions::hash() const {
    std::string key = "v1|" + std::to_string(class_param_bound) + "|" +
                      std::to_string(greedy_cap) + "|" + std::to_string(fallback_bound_num) +
                      "|" + std::to_string(fallback_bound_den);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Certifier::Certifier(VerifyOptions opts) : opts_(opts) {
    SieveConfig cfg;
    cfg.modulus_divisor = 0;
    cfg.param_bound = opts_.class_param_bound;
    classes_ = generate_classes(cfg);
}

Certificate Certifier::decompose(const WideInt& n) const {
    if (n < 2) throw std::domain_error("decompose: n must be >= 2");
    Certificate c;
    c.n = n;
    if (mpz_even_p(n.get_mpz_t())) {
        // 4/n = 1/(n/2) + 1/n + 1/n, one family for every even n
        c.method = Method::EvenReduce;
        c.x = n / 2;
        c.y = n;
        c.z = n;
        c.kind = DecompKind::General;
        ensure_valid(c);
        return c;
    }
    if (n % 4 == 3) {
        Decomposition d = two_term_for_4_3mod4((n - 3) / 4);
        c.method = Method::TwoTerm3Mod4;
        c.x = d.x;
        c.y = d.y;
        c.kind = DecompKind::TwoTerm;
        ensure_valid(c);
        return c;
    }
    if (!is_prime(n)) {
        WideInt p = factorize(n).front().first;
        Certificate sub = decompose(p);
        WideInt k = n / p;
        c.method = Method::CompositeFactor;
        c.x = k * sub.x;
        c.y = k * sub.y;
        if (sub.z) c.z = k * *sub.z;
        c.kind = sub.z ? DecompKind::General : DecompKind::TwoTerm;
        ensure_valid(c);
        return c;
    }
    return decompose_prime_1mod4(n);
}

Certificate Certifier::decompose_prime_1mod4(const WideInt& n) const {
    WideInt q = (n - 5) / 4;

    const CoverClass* hit = nullptr;
    if (q.fits_ulong_p()) {
        std::uint64_t qq = q.get_ui();
        for (const auto& cls : classes_) {
            if (qq >= cls.residue && (qq - cls.residue) % cls.modulus == 0) {
                hit = &cls;
                break;
            }
        }
    } else {
        for (const auto& cls : classes_) {
            WideInt r = static_cast<unsigned long>(cls.residue);
            if (q >= r && (q - r) % static_cast<unsigned long>(cls.modulus) == 0) {
                hit = &cls;
                break;
            }
        }
    }
    if (hit) {
        auto w = class_witness(*hit, q);
        Decomposition d = type1_from_abc(w[0] + 1, 4 * w[1] + 3, 4 * w[2] + 3);
        Certificate c;
        c.n = n;
        c.method = Method::SieveClass;
        c.x = d.x;
        c.y = d.y;
        c.z = d.z;
        c.kind = d.kind;
        c.witness = ParamWitness{WitnessFamily::PolyP, {w[0], w[1], w[2]}};
        ensure_valid(c);
        return c;
    }

    GreedyTrace trace = greedy_decompose(n, 4, opts_.greedy_cap);
    if (trace.stop != GreedyStop::Exhausted) {
        const Decomposition& d = *trace.result;
        Certificate c;
        c.n = n;
        c.method = Method::Greedy;
        c.x = d.x;
        c.y = d.y;
        c.z = d.z;
        c.kind = d.kind;
        ensure_valid(c);
        return c;
    }

    // Divisor scan: find p | q+β+2 with p ≡ 3β+2 (mod 4β+3), walking β while
    // den·(3β+2) < num·q.
    for (WideInt beta = 0; (3 * beta + 2) * opts_.fallback_bound_den < opts_.fallback_bound_num * q;
         ++beta) {
        WideInt q0 = q + beta + 2;
        WideInt base = 3 * beta + 2, step = 4 * beta + 3;
        for (const auto& p : divisors(q0)) {
            if (p < base || (p - base) % step != 0) continue;
            WideInt gamma = (p - base) / step;
            WideInt alpha = q0 / p - 1;
            Decomposition d = type1_from_abc(alpha + 1, 4 * beta + 3, 4 * gamma + 3);
            Certificate c;
            c.n = n;
            c.method = Method::WitnessSearch;
            c.x = d.x;
            c.y = d.y;
            c.z = d.z;
            c.kind = d.kind;
            c.witness = ParamWitness{WitnessFamily::PolyP, {alpha, beta, gamma}};
            ensure_valid(c);
            return c;
        }
    }
    throw NotFoundError(n);
}

Certificate decompose(const WideInt& n) {
    static const Certifier certifier{};
    return certifier.decompose(n);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint " + path);
    nlohmann::json j;
    in >> j;
    Checkpoint cp;
    cp.verified_through = WideInt(j.at("verified_through").get<std::string>());
    for (const auto& s : j.at("open_items")) cp.open_items.emplace_back(s.get<std::string>());
    cp.config_hash = j.at("config_hash").get<std::string>();
    return cp;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    nlohmann::json j;
    j["verified_through"] = cp.verified_through.get_str();
    auto& items = j["open_items"] = nlohmann::json::array();
    for (const auto& n : cp.open_items) items.push_back(n.get_str());
    j["config_hash"] = cp.config_hash;
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

namespace {

struct ChunkResult {
    std::string buffer;
    std::array<std::uint64_t, kMethodCount> counts{};
    std::vector<WideInt> not_found;
    std::string error;  // nonempty poisons the run
};

std::vector<std::uint32_t> odd_primes_up_to(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt_u64(std::uint64_t v) {
    WideInt root;
    mpz_sqrt(root.get_mpz_t(), WideInt(static_cast<unsigned long>(v)).get_mpz_t());
    return root.get_ui();
}

// Certificates for one chunk [lo, hi]; spf sieve gives the smallest odd
// prime factor of the odd composites and primality for the rest.
ChunkResult process_chunk(std::uint64_t lo, std::uint64_t hi, const Certifier& certifier,
                          const std::vector<std::uint32_t>& base_primes,
                          const std::unordered_map<std::uint64_t, Certificate>& prime_memo) {
    ChunkResult res;
    std::vector<std::uint32_t> spf(hi - lo + 1, 0);
    for (std::uint32_t p : base_primes) {
        std::uint64_t pp = p;
        if (pp * pp > hi) break;
        std::uint64_t start = ((lo + pp - 1) / pp) * pp;
        if (start < 3 * pp) start = 3 * pp;
        if (start % 2 == 0) start += pp;  // odd multiples only
        for (std::uint64_t m = start; m <= hi; m += 2 * pp)
            if (!spf[m - lo]) spf[m - lo] = p;
    }

    for (std::uint64_t v = lo; v <= hi; ++v) {
        WideInt n(static_cast<unsigned long>(v));
        try {
            Certificate cert;
            if (v % 2 == 0 || v % 4 == 3) {
                cert = certifier.decompose(n);
            } else if (std::uint32_t p = spf[v - lo]; p != 0) {
                const Certificate& sub = prime_memo.at(p);
                WideInt k = n / p;
                cert.n = n;
                cert.method = Method::CompositeFactor;
                cert.x = k * sub.x;
                cert.y = k * sub.y;
                if (sub.z) cert.z = k * *sub.z;
                cert.kind = sub.z ? DecompKind::General : DecompKind::TwoTerm;
                Decomposition d{cert.n, 4, cert.x, cert.y, cert.z, cert.kind};
                if (!verify_decomposition(d))
                    throw std::logic_error("lifted certificate failed for n = " + n.get_str());
            } else {
                cert = certifier.decompose(n);  // prime ≡ 1 (mod 4)
            }
            res.counts[static_cast<unsigned>(cert.method)]++;
            res.buffer += certificate_to_json_line(cert);
            res.buffer += '\n';
        } catch (const NotFoundError&) {
            res.not_found.push_back(n);
        }
    }
    return res;
}

}  // namespace

VerifyReport verify_range(const WideInt& from, const WideInt& to, unsigned shards,
                          const std::string& checkpoint_path, const std::string& out_path,
                          const VerifyOptions& opts) {
    if (from < 2 || to < from) throw std::domain_error("verify_range: need 2 <= from <= to");
    if (!to.fits_ulong_p()) throw std::domain_error("verify_range: range out of desk scale");
    if (shards < 1) throw std::domain_error("verify_range: shards must be >= 1");

    VerifyReport report;
    report.from = from;
    report.to = to;

    std::uint64_t start = from.get_ui();
    const std::uint64_t end = to.get_ui();
    const std::string config_hash = opts.hash() + "-f" + from.get_str();

    if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path)) {
        Checkpoint cp = read_checkpoint(checkpoint_path);
        if (cp.config_hash != config_hash)
            throw std::runtime_error(
                "checkpoint " + checkpoint_path + " was produced with a different "
                "configuration (hash " + cp.config_hash + ", expected " + config_hash +
                "); refusing to resume");
        report.resumed = true;
        report.not_found = cp.open_items;
        if (cp.verified_through >= to) {
            report.verified_through = to;
            return report;
        }
        start = cp.verified_through.get_ui() + 1;
        if (start < from.get_ui()) start = from.get_ui();
    }

    std::ofstream file_out;
    std::ostream* sink = &std::cout;
    if (!out_path.empty()) {
        file_out.open(out_path, report.resumed ? std::ios::app : std::ios::trunc);
        if (!file_out) throw std::runtime_error("cannot open output file " + out_path);
        sink = &file_out;
    }

    const Certifier certifier(opts);
    const std::uint64_t root = isqrt_u64(end);
    const auto base_primes = odd_primes_up_to(root < 3 ? 3 : root);
    std::unordered_map<std::uint64_t, Certificate> prime_memo;
    for (std::uint32_t p : base_primes) prime_memo.emplace(p, certifier.decompose(WideInt(p)));

    const std::uint64_t chunk = opts.chunk < 1 ? 1 : opts.chunk;
    const std::uint64_t nchunks = (end - start) / chunk + 1;

    std::atomic<std::uint64_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, ChunkResult> pending;

    auto worker = [&] {
        while (true) {
            std::uint64_t idx = next.fetch_add(1);
            if (idx >= nchunks) break;
            std::uint64_t lo = start + idx * chunk;
            std::uint64_t hi = std::min(end, lo + chunk - 1);
            ChunkResult res;
            try {
                res = process_chunk(lo, hi, certifier, base_primes, prime_memo);
            } catch (const std::exception& e) {
                res.error = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                pending.emplace(idx, std::move(res));
            }
            cv.notify_one();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned i = 0; i < shards; ++i) pool.emplace_back(worker);

    for (std::uint64_t expect = 0; expect < nchunks; ++expect) {
        ChunkResult res;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return pending.count(expect) > 0; });
            res = std::move(pending[expect]);
            pending.erase(expect);
        }
        if (!res.error.empty()) {
            next.store(nchunks);  // drain the remaining workers
            for (auto& t : pool) t.join();
            throw std::runtime_error("verify_range: worker failed: " + res.error);
        }
        *sink << res.buffer;
        for (unsigned i = 0; i < kMethodCount; ++i) report.method_counts[i] += res.counts[i];
        for (auto& n : res.not_found) report.not_found.push_back(n);
        std::uint64_t hi = std::min(end, start + expect * chunk + chunk - 1);
        report.verified_through = static_cast<unsigned long>(hi);
        if (!checkpoint_path.empty()) {
            sink->flush();
            write_checkpoint(checkpoint_path,
                             {report.verified_through, report.not_found, config_hash});
        }
    }
    for (auto& t : pool) t.join();
    sink->flush();

    for (unsigned i = 0; i < kMethodCount; ++i) report.certified += report.method_counts[i];
    return report;
}

RecheckReport recheck(const std::string& certificate_path) {
    std::ifstream in(certificate_path);
    if (!in) throw std::runtime_error("cannot open " + certificate_path);
    RecheckReport report;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Certificate c;
        try {
            c = certificate_from_json_line(line);
        } catch (const std::exception& e) {
            throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " +
                                     e.what());
        }
        ++report.lines;
        Decomposition d{c.n, 4, c.x, c.y, c.z, c.kind};
        if (verify_decomposition(d))
            ++report.passed;
        else
            report.failed_lines.push_back(lineno);
    }
    return report;
}

}  // namespace esc
