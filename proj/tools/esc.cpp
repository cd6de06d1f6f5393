#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "esc/certify.hpp"
#include "esc/conjectures.hpp"
#include "esc/crt_runs.hpp"
#include "esc/greedy.hpp"
#include "esc/sieve.hpp"

namespace {

esc::WideInt parse_wide(const std::string& s, const char* what) {
    try {
        return esc::WideInt(s);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(std::string(what) + ": '" + s + "' is not an integer");
    }
}

// The largest known exceptional value; anything bigger is worth shouting about.
const esc::WideInt kLastKnownSurvivor = 2083075;

int cmd_decompose(const std::string& n_str) {
    esc::WideInt n = parse_wide(n_str, "N");
    try {
        esc::Certificate cert = esc::decompose(n);
        std::cout << esc::certificate_to_json_line(cert) << '\n';
        return 0;
    } catch (const esc::NotFoundError& e) {
        std::cerr << "NOT-FOUND: " << e.what() << '\n';
        return 1;
    }
}

int cmd_verify(const std::string& from_str, const std::string& to_str, unsigned shards,
               const std::string& checkpoint, const std::string& out) {
    esc::WideInt from = parse_wide(from_str, "--from");
    esc::WideInt to = parse_wide(to_str, "--to");
    esc::VerifyReport report = esc::verify_range(from, to, shards, checkpoint, out);
    std::ostream& rep = out.empty() ? std::cerr : std::cout;
    rep << "verified [" << report.from.get_str() << ", " << report.to.get_str() << "]"
        << (report.resumed ? " (resumed)" : "") << '\n';
    rep << "certified: " << report.certified << '\n';
    for (unsigned i = 0; i < esc::kMethodCount; ++i) {
        if (report.method_counts[i])
            rep << "  " << esc::method_name(static_cast<esc::Method>(i)) << ": "
                << report.method_counts[i] << '\n';
    }
    rep << "not-found: " << report.not_found.size() << '\n';
    for (const auto& n : report.not_found) rep << "  NOT-FOUND n = " << n.get_str() << '\n';
    return report.not_found.empty() ? 0 : 1;
}

int cmd_recheck(const std::string& path) {
    esc::RecheckReport report = esc::recheck(path);
    std::cout << "lines: " << report.lines << ", passed: " << report.passed
              << ", failed: " << report.failed_lines.size() << '\n';
    for (auto ln : report.failed_lines) std::cout << "  FAIL line " << ln << '\n';
    return report.failed_lines.empty() ? 0 : 1;
}

int cmd_greedy(const std::string& n_str, int numerator, unsigned long max_steps) {
    esc::WideInt n = parse_wide(n_str, "N");
    esc::GreedyTrace trace = esc::greedy_decompose(n, numerator, max_steps);
    for (const auto& s : trace.steps) {
        std::cout << "j=" << s.j << " x=" << s.x.get_str() << " y=" << s.y.get_str()
                  << " r=" << s.r.get_str() << '\n';
    }
    switch (trace.stop) {
        case esc::GreedyStop::TwoTerm:
            std::cout << "two-term: " << trace.numerator << "/" << n.get_str() << " = 1/"
                      << trace.result->x.get_str() << " + 1/" << trace.result->y.get_str()
                      << '\n';
            return 0;
        case esc::GreedyStop::ThreeTerm:
            std::cout << "three-term: " << trace.numerator << "/" << n.get_str() << " = 1/"
                      << trace.result->x.get_str() << " + 1/" << trace.result->y.get_str()
                      << " + 1/" << trace.result->z->get_str() << '\n';
            return 0;
        case esc::GreedyStop::Exhausted:
            std::cout << "exhausted after " << trace.max_steps << " steps\n";
            return 1;
    }
    return 1;
}

int cmd_sieve_classes(const std::string& divisor_str, unsigned param_bound) {
    esc::SieveConfig cfg;
    cfg.modulus_divisor = parse_wide(divisor_str, "--modulus-divisor");
    cfg.param_bound = param_bound;
    esc::write_class_table(std::cout, esc::generate_classes(cfg));
    return 0;
}

int cmd_qstrong(const std::string& limit_str) {
    esc::WideInt limit = parse_wide(limit_str, "--limit");
    esc::QPartition part = esc::partition_q(limit);
    bool news = false;
    for (const auto& q : part.c_members) {
        std::cout << q.get_str() << '\n';
        if (q > kLastKnownSurvivor) {
            news = true;
            std::cerr << "*** NEW SURVIVOR: q = " << q.get_str()
                      << " is in neither A nor B and exceeds every known exceptional value\n";
        }
    }
    if (news)
        std::cerr << "*** please report the values above; they extend the exceptional set\n";
    return 0;
}

int cmd_qconj(const std::string& limit_str) {
    esc::WideInt limit = parse_wide(limit_str, "--limit");
    if (!limit.fits_ulong_p()) throw CLI::ValidationError("--limit out of range");
    std::uint64_t L = limit.get_ui();
    std::uint64_t counts[3] = {0, 0, 0};
    std::vector<std::uint64_t> uncovered;
    for (std::uint64_t q = 1; q <= L; ++q) {
        auto tag = esc::q_conjecture_holds(esc::WideInt((unsigned long)q));
        if (tag)
            counts[tag->relation - 1]++;
        else
            uncovered.push_back(q);
    }
    std::cout << "relation1: " << counts[0] << "\nrelation2: " << counts[1]
              << "\nrelation3: " << counts[2] << "\nuncovered: " << uncovered.size() << '\n';
    for (auto q : uncovered) std::cout << "  UNCOVERED q = " << q << '\n';
    return uncovered.empty() ? 0 : 1;
}

int cmd_run_crt(unsigned long length, const std::string& start_str) {
    esc::WideInt start = parse_wide(start_str, "--start-beta");
    esc::RunCertificate cert = esc::build_run(length, start);
    std::cout << esc::run_certificate_to_json(cert) << '\n';
    bool ok = esc::verify_run(cert, 50);
    std::cerr << (ok ? "verified with 50 samples per class\n"
                     : "VERIFICATION FAILED\n");
    return ok ? 0 : 1;
}

int cmd_jacobi(const std::string& a_str, const std::string& m_str) {
    esc::WideInt a = parse_wide(a_str, "A");
    esc::WideInt m = parse_wide(m_str, "M");
    std::cout << esc::jacobi(a, m) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"Exact certificates for 4/n = 1/x + 1/y + 1/z"};
    app.require_subcommand(1);

    std::string n_str, from_str, to_str, path, limit_str;
    std::string checkpoint, out;
    std::string divisor_str = "223092870";  // 2·3·5·7·11·13·17·19·23
    std::string start_beta = "0";
    std::string a_str, m_str;
    unsigned shards = 1;
    int numerator = 4;
    unsigned long max_steps = 10000;
    unsigned param_bound = 50;
    unsigned long length = 1;

    auto* dec = app.add_subcommand("decompose", "Certify one n");
    dec->add_option("N", n_str, "the denominator")->required();

    auto* ver = app.add_subcommand("verify", "Certify a whole range, sharded");
    ver->add_option("--from", from_str)->required();
    ver->add_option("--to", to_str)->required();
    ver->add_option("--shards", shards, "worker threads");
    ver->add_option("--checkpoint", checkpoint, "resumable checkpoint file");
    ver->add_option("--out", out, "certificate file (default: stdout)");

    auto* rec = app.add_subcommand("recheck", "Re-verify a certificate file");
    rec->add_option("PATH", path)->required();

    auto* gre = app.add_subcommand("greedy", "Run the stepwise search on one n");
    gre->add_option("N", n_str)->required();
    gre->add_option("--numerator", numerator)->check(CLI::IsMember({4, 5}));
    gre->add_option("--max-steps", max_steps);

    auto* sie = app.add_subcommand("sieve-classes", "Print the residue-class table");
    sie->add_option("--modulus-divisor", divisor_str, "keep moduli dividing this (0 = all)");
    sie->add_option("--param-bound", param_bound);

    auto* qst = app.add_subcommand("qstrong", "Exceptional q below a limit");
    qst->add_option("--limit", limit_str)->required();

    auto* qcj = app.add_subcommand("qconj", "Check the three covering relations");
    qcj->add_option("--limit", limit_str)->required();

    auto* run = app.add_subcommand("run-crt", "Build a consecutive-class run certificate");
    run->add_option("--length", length)->required();
    run->add_option("--start-beta", start_beta);

    auto* jac = app.add_subcommand("jacobi", "Jacobi symbol (A/M)");
    jac->add_option("A", a_str)->required();
    jac->add_option("M", m_str)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*dec) return cmd_decompose(n_str);
        if (*ver) return cmd_verify(from_str, to_str, shards, checkpoint, out);
        if (*rec) return cmd_recheck(path);
        if (*gre) return cmd_greedy(n_str, numerator, max_steps);
        if (*sie) return cmd_sieve_classes(divisor_str, param_bound);
        if (*qst) return cmd_qstrong(limit_str);
        if (*qcj) return cmd_qconj(limit_str);
        if (*run) return cmd_run_crt(length, start_beta);
        if (*jac) return cmd_jacobi(a_str, m_str);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
