#include "esc/sieve.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace esc {

namespace {

constexpr const char* kFormNames[kFormCount] = {
    "alpha-free",           "alpha-free-swap",      "beta-free",
    "beta-free-swap",       "gamma-free",           "gamma-free-swap",
    "alpha-free-gamma-diff", "alpha-free-beta-diff", "beta-free-gamma-diff",
    "gamma-free-alpha-diff", "beta-free-alpha-diff", "gamma-free-beta-diff",
    "alpha-free-split-high", "alpha-free-split-low",
    "translate-alpha",      "translate-beta",       "translate-gamma",
};

template <typename I>
I q_val(I x, I y, I z) {
    return 4 * x * y * z + 3 * x * y + 3 * x * z + 2 * x + 4 * y * z + 2 * y + 3 * z;
}

template <typename I>
I p_val(I x, I y, I z) {
    return (x + 1) * (4 * y + 3) * (4 * z + 3) - (x + 1) - (4 * y + 3);
}

// Witness components for the q-forms; a <= b, phi >= phi_min(form).
template <typename I>
std::array<I, 3> q_form_witness(unsigned form, I a, I b, I phi) {
    switch (form) {
        case 0: return {phi, a, b};
        case 1: return {phi, b, a};
        case 2: return {a, phi, b};
        case 3: return {b, phi, a};
        case 4: return {a, b, phi};
        case 5: return {b, a, phi};
        case 6: return {phi - b, a, b - a};
        case 7: return {phi - b, b - a, a};
        case 8: return {a, phi - b, b - a};
        case 9: return {b - a, a, phi - b};
        case 10: return {b - a, phi - b, a};
        case 11: return {a, b - a, phi - b};
        case 12: return {phi, a, b - a - 1};
        case 13: return {phi, b - a - 1, a};
        default: throw std::logic_error("q_form_witness: not a q form");
    }
}

bool q_form_valid(unsigned form, std::uint64_t a, std::uint64_t b) {
    if (form == 12 || form == 13) return a < b;
    return a <= b;
}

// phi below which some witness component would go negative.
std::uint64_t q_form_phi_min(unsigned form, std::uint64_t b) {
    return (form >= 6 && form <= 11) ? b : 0;
}

template <typename I>
std::array<I, 3> translation_witness(unsigned form, std::uint32_t packed, I phi) {
    I x = packed & 1, y = (packed >> 1) & 1, z = (packed >> 2) & 1;
    switch (form) {
        case 14: return {x + phi, y, z};
        case 15: return {x, y + phi, z};
        case 16: return {x, y, z + phi};
        default: throw std::logic_error("translation_witness: not a translation form");
    }
}

}  // namespace

const char* form_name(unsigned form) {
    if (form >= kFormCount) throw std::out_of_range("form_name");
    return kFormNames[form];
}

bool is_translation_form(unsigned form) { return form >= kQFormCount; }

namespace {

// Divisor-indexed subsumption: equivalent to folding subsume_add over the
// emission order, but each candidate costs only its divisor count.
class SubsumeIndex {
  public:
    explicit SubsumeIndex(std::uint64_t max_modulus) : spf_(max_modulus + 1, 0) {
        for (std::uint64_t i = 2; i < spf_.size(); ++i) {
            if (spf_[i] != 0) continue;
            for (std::uint64_t j = i; j < spf_.size(); j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }

    bool subsumed(std::uint64_t s, std::uint64_t r) const {
        divs_.assign(1, 1);
        std::uint64_t m = s;
        while (m > 1) {
            std::uint64_t p = spf_[m];
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            std::size_t count = divs_.size();
            std::uint64_t pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < count; ++i) divs_.push_back(divs_[i] * pk);
            }
        }
        for (std::uint64_t d : divs_) {
            auto it = kept_.find(d);
            if (it != kept_.end() && it->second.count(r % d)) return true;
        }
        return false;
    }

    void add(std::uint64_t s, std::uint64_t r) { kept_[s].insert(r); }

  private:
    std::vector<std::uint32_t> spf_;
    std::unordered_map<std::uint64_t, std::unordered_set<std::uint64_t>> kept_;
    mutable std::vector<std::uint64_t> divs_;
};

}  // namespace

std::vector<CoverClass> generate_classes(const SieveConfig& cfg) {
    if (cfg.param_bound < 1) throw std::domain_error("generate_classes: param_bound must be >= 1");
    if (cfg.modulus_divisor < 0)
        throw std::domain_error("generate_classes: modulus_divisor must be >= 0");

    const std::uint64_t P = cfg.param_bound;
    bool restricted = cfg.modulus_divisor != 0;
    std::uint64_t divisor_u64 = 0;
    if (restricted && cfg.modulus_divisor.fits_ulong_p())
        divisor_u64 = cfg.modulus_divisor.get_ui();

    // Largest possible modulus: the gamma-free form at a = b = P.
    std::uint64_t s_max = 4 * P * P + 7 * P + 3;
    SubsumeIndex index(s_max);
    std::vector<CoverClass> out;

    for (std::uint64_t b = 0; b <= P; ++b) {
        for (std::uint64_t a = 0; a <= b; ++a) {
            for (unsigned form = 0; form < kQFormCount; ++form) {
                if (!q_form_valid(form, a, b)) continue;
                std::uint64_t phi0 = q_form_phi_min(form, b);
                auto w0 = q_form_witness<std::int64_t>(form, (std::int64_t)a, (std::int64_t)b,
                                                       (std::int64_t)phi0);
                auto w1 = q_form_witness<std::int64_t>(form, (std::int64_t)a, (std::int64_t)b,
                                                       (std::int64_t)phi0 + 1);
                std::int64_t r0 = q_val(w0[0], w0[1], w0[2]);
                std::int64_t s = q_val(w1[0], w1[1], w1[2]) - r0;
                if (s <= 0 || r0 < 0) continue;
                std::uint64_t su = static_cast<std::uint64_t>(s);
                std::uint64_t ru = static_cast<std::uint64_t>(r0);
                if (restricted) {
                    if (divisor_u64 != 0) {
                        if (divisor_u64 % su != 0) continue;
                    } else if (cfg.modulus_divisor % static_cast<unsigned long>(su) != 0) {
                        continue;
                    }
                }
                if (index.subsumed(su, ru)) continue;
                index.add(su, ru);
                out.push_back({su, ru, static_cast<std::uint8_t>(form),
                               static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
            }
        }
    }
    return out;
}

std::vector<CoverClass> subsume_add(std::vector<CoverClass> classes, const CoverClass& c) {
    for (const auto& k : classes) {
        if (c.modulus % k.modulus == 0 && c.residue % k.modulus == k.residue % k.modulus)
            return classes;
    }
    classes.push_back(c);
    return classes;
}

std::array<WideInt, 3> class_witness(const CoverClass& c, const WideInt& q) {
    if (c.modulus == 0) throw std::domain_error("class_witness: zero modulus");
    WideInt m = static_cast<unsigned long>(c.modulus);
    WideInt r = static_cast<unsigned long>(c.residue);
    if (q < r || (q - r) % m != 0)
        throw std::domain_error("class_witness: " + q.get_str() + " is not a member of " +
                                std::to_string(c.residue) + " (mod " +
                                std::to_string(c.modulus) + ")");
    WideInt k = (q - r) / m;
    std::array<WideInt, 3> w;
    WideInt value;
    if (is_translation_form(c.form)) {
        w = translation_witness<WideInt>(c.form, c.p1, k);
        value = p_val<WideInt>(w[0], w[1], w[2]);
    } else {
        WideInt phi = k + static_cast<unsigned long>(q_form_phi_min(c.form, c.p2));
        w = q_form_witness<WideInt>(c.form, WideInt(c.p1), WideInt(c.p2), phi);
        if (w[0] < 0 || w[1] < 0 || w[2] < 0)
            throw std::domain_error("class_witness: free parameter out of range");
        value = q_val<WideInt>(w[0], w[1], w[2]);
    }
    if (value != q) throw std::logic_error("class_witness: recovered witness mismatch");
    return w;
}

namespace {

std::uint64_t to_u64_checked(const WideInt& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p())
        throw std::domain_error(std::string(what) + ": out of supported range");
    return v.get_ui();
}

std::uint64_t powmod_small(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * b % m;
        b = (unsigned __int128)b * b % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

void sieve_survivors(const WideInt& q_from, const WideInt& q_to, const SieveConfig& cfg,
                     const std::function<void(std::uint64_t)>& emit) {
    if (q_from > q_to) throw std::domain_error("sieve_survivors: empty range");
    std::uint64_t lo = to_u64_checked(q_from, "sieve_survivors: q_from");
    std::uint64_t hi = to_u64_checked(q_to, "sieve_survivors: q_to");
    std::vector<bool> killed(hi - lo + 1, false);

    for (std::uint64_t p : cfg.small_primes) {
        if (p < 3) continue;  // 4q+5 is odd
        // q with p | 4q+5: q ≡ -5 * inverse(4) (mod p)
        std::uint64_t inv4 = powmod_small(4 % p, p - 2, p);
        std::uint64_t qp = (p - 5 % p) % p;
        qp = (unsigned __int128)qp * inv4 % p;
        std::uint64_t start = lo <= qp ? qp : qp + ((lo - qp + p - 1) / p) * p;
        for (std::uint64_t q = start; q <= hi; q += p) killed[q - lo] = true;
    }

    for (const auto& stage : cfg.stages) {
        for (const auto& c : stage) {
            std::uint64_t s = c.modulus, r = c.residue;
            std::uint64_t start = r;
            if (start < lo) start = r + ((lo - r + s - 1) / s) * s;
            for (std::uint64_t q = start; q <= hi; q += s) killed[q - lo] = true;
        }
    }

    for (std::uint64_t q = lo; q <= hi; ++q)
        if (!killed[q - lo]) emit(q);
}

std::vector<std::uint64_t> sieve_survivors(const WideInt& q_from, const WideInt& q_to,
                                           const SieveConfig& cfg) {
    std::vector<std::uint64_t> out;
    sieve_survivors(q_from, q_to, cfg, [&](std::uint64_t q) { out.push_back(q); });
    return out;
}

void write_survivors(std::ostream& os, const WideInt& q_from, const WideInt& q_to,
                     const SieveConfig& cfg) {
    sieve_survivors(q_from, q_to, cfg, [&](std::uint64_t q) { os << q << '\n'; });
}

std::vector<CoverClass> translation_classes() {
    struct Entry {
        unsigned form;
        unsigned x, y, z;
    };
    // The remark's six classes, in its order.
    constexpr Entry entries[] = {
        {14, 0, 0, 0},  // 5 + 8t
        {16, 0, 0, 0},  // 5 + 12t
        {14, 0, 1, 0},  // 13 + 20t
        {14, 0, 0, 1},  // 17 + 20t
        {16, 0, 1, 0},  // 13 + 28t
        {15, 1, 0, 1},  // 37 + 52t
    };
    std::vector<CoverClass> out;
    for (const auto& e : entries) {
        std::uint32_t packed = e.x | (e.y << 1) | (e.z << 2);
        auto w0 = translation_witness<std::int64_t>(e.form, packed, 0);
        auto w1 = translation_witness<std::int64_t>(e.form, packed, 1);
        std::int64_t base = p_val(w0[0], w0[1], w0[2]);
        std::int64_t step = p_val(w1[0], w1[1], w1[2]) - base;
        out.push_back({static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(base),
                       static_cast<std::uint8_t>(e.form), packed, 0});
    }
    return out;
}

void write_class_table(std::ostream& os, const std::vector<CoverClass>& classes) {
    for (const auto& c : classes) {
        os << c.modulus << '\t' << c.residue << '\t' << form_name(c.form) << '\t' << c.p1
           << '\t' << c.p2 << '\n';
    }
}

std::vector<CoverClass> read_class_table(std::istream& is) {
    std::vector<CoverClass> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        CoverClass c;
        std::string family;
        if (!(ss >> c.modulus >> c.residue >> family >> c.p1 >> c.p2))
            throw std::runtime_error("class table: parse error at line " +
                                     std::to_string(lineno));
        bool found = false;
        for (unsigned f = 0; f < kFormCount; ++f) {
            if (family == kFormNames[f]) {
                c.form = static_cast<std::uint8_t>(f);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("class table: unknown family '" + family + "' at line " +
                                     std::to_string(lineno));
        out.push_back(c);
    }
    return out;
}

SieveConfig appendix_config(unsigned param_bound) {
    SieveConfig cfg;
    cfg.param_bound = param_bound;
    cfg.small_primes = {3, 5, 7, 11, 13, 17, 19, 23};
    SieveConfig stage1 = cfg;
    stage1.modulus_divisor = 2u * 3 * 5 * 7 * 11 * 13 * 17 * 19;
    SieveConfig stage2 = cfg;
    stage2.modulus_divisor = WideInt(2u * 3 * 5 * 7 * 11 * 13 * 17 * 19) * 23;
    cfg.modulus_divisor = stage2.modulus_divisor;
    cfg.stages.push_back(generate_classes(stage1));
    cfg.stages.push_back(generate_classes(stage2));
    return cfg;
}

SieveConfig exact_cover_config(std::uint64_t q_max) {
    WideInt root;
    mpz_sqrt(root.get_mpz_t(), WideInt(static_cast<unsigned long>(q_max / 3)).get_mpz_t());
    std::uint64_t P = root.get_ui() + 1;
    while (3 * P * P + 10 * P + 7 <= q_max) ++P;
    SieveConfig cfg;
    cfg.modulus_divisor = 0;
    cfg.param_bound = static_cast<unsigned>(P);
    cfg.small_primes = {3, 5, 7, 11, 13, 17, 19, 23};
    cfg.stages.push_back(generate_classes(cfg));
    return cfg;
}

}  // namespace esc
