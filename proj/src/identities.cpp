#include "esc/identities.hpp"

namespace esc {

bool verify_decomposition(const Decomposition& d) {
    if (d.n < 1 || d.numerator < 1 || d.x < 1 || d.y < 1) return false;
    if (d.z) {
        if (*d.z < 1) return false;
        const WideInt &x = d.x, &y = d.y, &z = *d.z;
        return d.numerator * x * y * z == d.n * (x * y + y * z + z * x);
    }
    return d.numerator * d.x * d.y == d.n * (d.x + d.y);
}

int count_divisible_by_n(const Decomposition& d) {
    int c = 0;
    if (d.x % d.n == 0) ++c;
    if (d.y % d.n == 0) ++c;
    if (d.z && *d.z % d.n == 0) ++c;
    return c;
}

namespace {

std::optional<Decomposition> two_term_for_3_u64(std::uint64_t n) {
    std::uint64_t lo = n / 3 + 1;
    std::uint64_t hi = (2 * n + 2) / 3;  // ceil(2n/3)
    for (std::uint64_t x = lo; x <= hi; ++x) {
        std::uint64_t d = 3 * x - n;
        if ((n * x) % d == 0) {
            Decomposition out;
            out.n = static_cast<unsigned long>(n);
            out.numerator = 3;
            out.x = static_cast<unsigned long>(x);
            out.y = static_cast<unsigned long>(n * x / d);
            out.kind = DecompKind::TwoTerm;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Decomposition> two_term_for_3(const WideInt& n) {
    if (n < 2) throw std::domain_error("two_term_for_3: n must be >= 2");
    // Contract: none exactly when n ≡ 1 (mod 6). For such composite n a pair
    // can still exist (3/25 = 1/10 + 1/50); the classical criterion talks
    // about the class, so it is answered before scanning.
    if (n % 6 == 1) return std::nullopt;
    if (n.fits_ulong_p() && n.get_ui() < (1ull << 31)) return two_term_for_3_u64(n.get_ui());
    WideInt x = n / 3 + 1;
    WideInt hi = ceil_div(2 * n, 3);
    for (; x <= hi; ++x) {
        WideInt d = 3 * x - n;
        WideInt nx = n * x;
        if (nx % d == 0) {
            Decomposition out;
            out.n = n;
            out.numerator = 3;
            out.x = x;
            out.y = nx / d;
            out.kind = DecompKind::TwoTerm;
            return out;
        }
    }
    return std::nullopt;
}

Decomposition two_term_for_4_3mod4(const WideInt& q) {
    if (q < 0) throw std::domain_error("two_term_for_4_3mod4: q must be >= 0");
    Decomposition out;
    out.n = 4 * q + 3;
    out.x = q + 1;
    out.y = (q + 1) * out.n;
    out.kind = DecompKind::TwoTerm;
    return out;
}

std::pair<WideInt, WideInt> split_unit_fraction(const WideInt& a, const WideInt& b,
                                                const WideInt& c) {
    if (a < 1 || b < 1 || c < 1)
        throw std::domain_error("split_unit_fraction: arguments must be positive");
    WideInt s = (a + b) * c;
    return {a * s, b * s};
}

Decomposition type1_from_abc(const WideInt& a, const WideInt& b, const WideInt& c) {
    if (a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("type1_from_abc: arguments must be positive");
    WideInt bc = b * c;
    if (bc % 4 != 1) throw std::invalid_argument("type1_from_abc: bc must be ≡ 1 (mod 4)");
    WideInt n = a * bc - a - b;
    if (n < 2) throw std::domain_error("type1_from_abc: n = abc-a-b is below 2");
    WideInt w = (bc - 1) / 4;
    WideInt ac1 = a * c - 1;
    Decomposition out;
    out.n = n;
    out.x = a * w;
    out.y = a * ac1 * w;
    out.z = ac1 * w * n;
    out.kind = DecompKind::TypeI;
    if (!verify_decomposition(out))
        throw std::logic_error("type1_from_abc: identity failed to verify");
    return out;
}

WideInt p_poly(const WideInt& alpha, const WideInt& beta, const WideInt& gamma) {
    WideInt a1 = alpha + 1, b3 = 4 * beta + 3;
    return a1 * b3 * (4 * gamma + 3) - a1 - b3;
}

WideInt q_poly(const WideInt& alpha, const WideInt& beta, const WideInt& gamma) {
    return ((4 * beta + 3) * gamma + (3 * beta + 2)) * (alpha + 1) - (beta + 2);
}

const char* witness_family_name(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::TypeISystem: return "type1-system";
        case WitnessFamily::TypeIISystem: return "type2-system";
        case WitnessFamily::TypeIScaled: return "type1-scaled";
        case WitnessFamily::TypeIIParametric: return "type2-parametric";
        case WitnessFamily::ProductForm: return "product-form";
        case WitnessFamily::PolyP: return "poly-p";
        case WitnessFamily::DivisibilitySystem: return "divisibility-system";
    }
    return "?";
}

std::optional<WitnessFamily> witness_family_from_name(const std::string& s) {
    for (WitnessFamily f :
         {WitnessFamily::TypeISystem, WitnessFamily::TypeIISystem, WitnessFamily::TypeIScaled,
          WitnessFamily::TypeIIParametric, WitnessFamily::ProductForm, WitnessFamily::PolyP,
          WitnessFamily::DivisibilitySystem}) {
        if (s == witness_family_name(f)) return f;
    }
    return std::nullopt;
}

namespace {

void require_shape(const ParamWitness& w, std::size_t count, bool positive) {
    if (w.params.size() != count)
        throw std::invalid_argument(std::string("check_witness: family ") +
                                    witness_family_name(w.family) + " takes " +
                                    std::to_string(count) + " parameters");
    for (const auto& p : w.params) {
        if (p < (positive ? 1 : 0))
            throw std::invalid_argument("check_witness: parameter out of domain");
    }
}

// (4abc-1)d = (a+b)n  ->  4/n = 1/(abcn) + 1/(bcd) + 1/(acd)
std::optional<Decomposition> from_type1_system(const WideInt& n, const WideInt& a,
                                               const WideInt& b, const WideInt& c,
                                               const WideInt& d) {
    if ((4 * a * b * c - 1) * d != (a + b) * n) return std::nullopt;
    Decomposition out;
    out.n = n;
    out.x = a * b * c * n;
    out.y = b * c * d;
    out.z = a * c * d;
    out.kind = DecompKind::TypeI;
    if (!verify_decomposition(out))
        throw std::logic_error("check_witness: induced Type I triple failed to verify");
    return out;
}

// (4abc-1)d = an+b  ->  4/n = 1/(abcn) + 1/(bcd) + 1/(acdn)
std::optional<Decomposition> from_type2_system(const WideInt& n, const WideInt& a,
                                               const WideInt& b, const WideInt& c,
                                               const WideInt& d) {
    if ((4 * a * b * c - 1) * d != a * n + b) return std::nullopt;
    Decomposition out;
    out.n = n;
    out.x = a * b * c * n;
    out.y = b * c * d;
    out.z = a * c * d * n;
    out.kind = DecompKind::TypeII;
    if (!verify_decomposition(out))
        throw std::logic_error("check_witness: induced Type II triple failed to verify");
    return out;
}

}  // namespace

std::optional<Decomposition> check_witness(const WideInt& n, const ParamWitness& w) {
    switch (w.family) {
        case WitnessFamily::TypeISystem: {
            require_shape(w, 4, true);
            return from_type1_system(n, w.params[0], w.params[1], w.params[2], w.params[3]);
        }
        case WitnessFamily::TypeIISystem: {
            require_shape(w, 4, true);
            return from_type2_system(n, w.params[0], w.params[1], w.params[2], w.params[3]);
        }
        case WitnessFamily::TypeIScaled: {
            // δn = (4αβγδ-1) - 4α²γ; maps back through b = βδ - α.
            require_shape(w, 4, true);
            const WideInt &al = w.params[0], &be = w.params[1], &ga = w.params[2],
                          &de = w.params[3];
            if (de * n != (4 * al * be * ga * de - 1) - 4 * al * al * ga) return std::nullopt;
            WideInt b = be * de - al;
            if (b < 1) return std::nullopt;
            return from_type1_system(n, al, b, ga, be);
        }
        case WitnessFamily::TypeIIParametric: {
            // n = (4αβγ-1)δ - 4β²γ; maps back through d = αδ - β.
            require_shape(w, 4, true);
            const WideInt &al = w.params[0], &be = w.params[1], &ga = w.params[2],
                          &de = w.params[3];
            if (n != (4 * al * be * ga - 1) * de - 4 * be * be * ga) return std::nullopt;
            WideInt d = al * de - be;
            if (d < 1) return std::nullopt;
            return from_type2_system(n, al, be, ga, d);
        }
        case WitnessFamily::ProductForm: {
            require_shape(w, 3, true);
            const WideInt &a = w.params[0], &b = w.params[1], &c = w.params[2];
            if ((b * c) % 4 != 1 || a * b * c - a - b != n) return std::nullopt;
            return type1_from_abc(a, b, c);
        }
        case WitnessFamily::PolyP: {
            require_shape(w, 3, false);
            const WideInt &al = w.params[0], &be = w.params[1], &ga = w.params[2];
            if (p_poly(al, be, ga) != n) return std::nullopt;
            return type1_from_abc(al + 1, 4 * be + 3, 4 * ga + 3);
        }
        case WitnessFamily::DivisibilitySystem: {
            require_shape(w, 3, true);
            const WideInt &x = w.params[0], &t = w.params[1], &lam = w.params[2];
            if (!divisibility_system_holds(n, x, t, lam)) return std::nullopt;
            WideInt y = (x * n + t) / lam;
            WideInt z = (n + lam) / (4 * x * t);
            return from_type1_system(n, x, y, z, t);
        }
    }
    throw std::invalid_argument("check_witness: unknown family");
}

bool divisibility_system_holds(const WideInt& n, const WideInt& x, const WideInt& t,
                               const WideInt& lambda) {
    if (x < 1 || t < 1 || lambda < 1 || n < 1) return false;
    if ((x * n + t) % lambda != 0) return false;
    return (n + lambda) % (4 * x * t) == 0;
}

WideInt shift_witness(const WideInt& n, const WideInt& x, const WideInt& t,
                      const WideInt& lambda, const WideInt& j) {
    if (j < 0) throw std::domain_error("shift_witness: j must be >= 0");
    if (!divisibility_system_holds(n, x, t, lambda))
        throw std::invalid_argument("shift_witness: (x,t,λ) does not solve the system for n");
    return n + 4 * x * t * lambda * j;
}

}  // namespace esc
