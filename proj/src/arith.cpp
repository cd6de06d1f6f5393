#include "esc/arith.hpp"

#include <algorithm>

namespace esc {

CrtIncompatible::CrtIncompatible(const Congruence& a, const Congruence& b)
    : std::runtime_error("incompatible congruences: x ≡ " + a.residue.get_str() +
                         " (mod " + a.modulus.get_str() + ") vs x ≡ " +
                         b.residue.get_str() + " (mod " + b.modulus.get_str() + ")"),
      lhs(a),
      rhs(b) {}

WideInt gcd(const WideInt& a, const WideInt& b) {
    WideInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

WideInt lcm_list(const std::vector<WideInt>& xs) {
    WideInt l = 1;
    for (const auto& x : xs) {
        if (x <= 0) throw std::domain_error("lcm_list: nonpositive element " + x.get_str());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
    }
    return l;
}

WideInt ceil_div(const WideInt& num, const WideInt& den) {
    if (den <= 0) throw std::domain_error("ceil_div: denominator must be positive");
    WideInt q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic witness set for n < 3.3e24 (first 13 primes).
constexpr std::uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool mr_round_u64(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull, 41ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kMrBases)
        if (!mr_round_u64(n, d, s, a)) return false;
    return true;
}

bool is_prime(const WideInt& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    for (std::uint64_t p : kMrBases) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    WideInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    WideInt nm1 = n - 1;
    for (std::uint64_t a : kMrBases) {
        WideInt x, base = static_cast<unsigned long>(a);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int jacobi(const WideInt& n, const WideInt& m) {
    if (m <= 0 || mpz_even_p(m.get_mpz_t()))
        throw std::domain_error("jacobi: modulus must be odd and positive");
    WideInt a = n % m;  // property (i): reduce first; mpz % keeps sign of n
    if (a < 0) a += m;
    WideInt b = m;
    int sign = 1;
    while (a != 0) {
        unsigned long z = mpz_scan1(a.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), z);
        unsigned long bm8 = mpz_fdiv_ui(b.get_mpz_t(), 8);
        if ((z & 1) && (bm8 == 3 || bm8 == 5)) sign = -sign;
        // reciprocity: both now odd
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && (bm8 & 3) == 3) sign = -sign;
        std::swap(a, b);
        a %= b;
    }
    return b == 1 ? sign : 0;
}

bool is_perfect_square(const WideInt& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {

// Pollard rho with Floyd cycle finding; retries with a fresh polynomial
// constant whenever a cycle closes without exposing a factor.
WideInt rho_split(const WideInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0x9e3779b97f4a7c15ull);
    WideInt x, y, c, d, diff;
    while (true) {
        mpz_urandomm(x.get_mpz_t(), st, n.get_mpz_t());
        mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
        if (c == 0) c = 1;
        y = x;
        d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x - y;
            if (diff == 0) break;  // cycle without factor; restart
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 0 && d != 1 && d != n) {
            gmp_randclear(st);
            return d;
        }
    }
}

void factor_rec(const WideInt& n, std::vector<WideInt>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    WideInt d = rho_split(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<WideInt, unsigned>> factorize(const WideInt& n,
                                                    std::uint64_t trial_bound) {
    if (n < 1) throw std::domain_error("factorize: argument must be >= 1");
    if (trial_bound < 2) trial_bound = 2;
    std::vector<std::pair<WideInt, unsigned>> out;
    WideInt m = n;
    for (std::uint64_t p = 2; p <= trial_bound && p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out.emplace_back(WideInt(static_cast<unsigned long>(p)), e);
    }
    if (m > 1) {
        std::vector<WideInt> rest;
        factor_rec(m, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.emplace_back(rest[i], static_cast<unsigned>(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<WideInt> divisors(const WideInt& n) {
    if (n < 1) throw std::domain_error("divisors: argument must be >= 1");
    auto fac = factorize(n);
    std::vector<WideInt> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t count = divs.size();
        WideInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

namespace {

// Merge x ≡ a.residue (mod a.modulus) with x ≡ b.residue (mod b.modulus).
Congruence crt_pair(const Congruence& a, const Congruence& b) {
    WideInt g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.modulus.get_mpz_t(),
               b.modulus.get_mpz_t());
    WideInt diff = b.residue - a.residue;
    if (diff % g != 0) throw CrtIncompatible(a, b);
    WideInt lcm = a.modulus / g * b.modulus;
    // x = a.r + a.m * p * (diff/g) solves both; reduce mod lcm
    WideInt x = a.residue + a.modulus * (p * (diff / g) % (b.modulus / g));
    x %= lcm;
    if (x < 0) x += lcm;
    return {lcm, x};
}

}  // namespace

Congruence crt_solve(const std::vector<Congruence>& congruences) {
    if (congruences.empty()) throw std::domain_error("crt_solve: empty system");
    for (const auto& c : congruences) {
        if (c.modulus < 1) throw std::domain_error("crt_solve: modulus must be >= 1");
        if (c.residue < 0 || c.residue >= c.modulus)
            throw std::domain_error("crt_solve: residue out of range");
    }
    Congruence acc = congruences.front();
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        try {
            acc = crt_pair(acc, congruences[i]);
        } catch (const CrtIncompatible&) {
            // Name an offending *input* pair, not the folded accumulator.
            for (std::size_t j = 0; j < i; ++j) {
                const auto& a = congruences[j];
                const auto& b = congruences[i];
                if ((b.residue - a.residue) % gcd(a.modulus, b.modulus) != 0)
                    throw CrtIncompatible(a, b);
            }
            throw;
        }
    }
    return acc;
}

}  // namespace esc
