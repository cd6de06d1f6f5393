#include "doctest.h"

#include <random>

#include "esc/arith.hpp"

using esc::Congruence;
using esc::WideInt;

namespace {

// Test-side oracle: Jacobi as a product of Legendre symbols, each computed
// independently by Euler's criterion n^((p-1)/2) mod p.
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * b % m;
        b = (unsigned __int128)b * b % m;
        e >>= 1;
    }
    return r;
}

int legendre_euler(std::uint64_t n, std::uint64_t p) {
    n %= p;
    if (n == 0) return 0;
    return powmod(n, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int jacobi_oracle(std::uint64_t n, std::uint64_t m) {
    int s = 1;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        while (m % p == 0) {
            s *= legendre_euler(n, p);
            m /= p;
        }
    }
    if (m > 1) s *= legendre_euler(n, m);
    return s;
}

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("gcd") {
    CHECK(esc::gcd(12, 18) == 6);
    CHECK(esc::gcd(4 * 1 - 1, 1) == 1);
    CHECK(esc::gcd(0, 7) == 7);
    CHECK(esc::gcd(0, 0) == 0);
    CHECK(esc::gcd(-12, 18) == 6);
}

TEST_CASE("lcm_list") {
    CHECK(esc::lcm_list({3, 7}) == 21);
    CHECK(esc::lcm_list({3, 2}) == 6);
    CHECK(esc::lcm_list({}) == 1);
    CHECK(esc::lcm_list({2, 4, 6}) == 12);
    CHECK_THROWS_AS((void)esc::lcm_list({3, 0}), std::domain_error);
    CHECK_THROWS_AS((void)esc::lcm_list({-2}), std::domain_error);
}

TEST_CASE("ceil_div") {
    CHECK(esc::ceil_div(85, 3) == 29);
    CHECK(esc::ceil_div(10, 5) == 2);
    CHECK(esc::ceil_div(102, 7) == 15);
    CHECK(esc::ceil_div(-7, 2) == -3);
    CHECK(esc::ceil_div(0, 9) == 0);
    CHECK_THROWS_AS((void)esc::ceil_div(1, 0), std::domain_error);
    CHECK_THROWS_AS((void)esc::ceil_div(1, -3), std::domain_error);
}

TEST_CASE("is_prime basics") {
    CHECK_FALSE(esc::is_prime(2009));  // 7²·41
    CHECK(esc::is_prime(17));
    CHECK_FALSE(esc::is_prime(1));
    CHECK_FALSE(esc::is_prime(0));
    CHECK(esc::is_prime(2));
    CHECK(esc::is_prime(WideInt("18446744073709551557")));   // largest prime < 2^64
    CHECK_FALSE(esc::is_prime(WideInt("18446744073709551617")));  // 274177 · 67280421310721
}

TEST_CASE("is_prime agrees with trial division up to 1e6") {
    for (std::uint64_t n = 0; n <= 1000000; ++n) {
        if (esc::is_prime_u64(n) != trial_division_prime(n)) {
            CAPTURE(n);
            REQUIRE(false);
        }
    }
}

TEST_CASE("jacobi basics") {
    CHECK(esc::jacobi(-1, 7) == -1);  // n ≡ 3 (mod 4) has (-1/n) = -1
    CHECK(esc::jacobi(2, 15) == 1);
    CHECK(esc::jacobi(6, 15) == 0);
    CHECK(esc::jacobi(0, 1) == 1);
    CHECK(esc::jacobi(5, 1) == 1);
    CHECK_THROWS_AS((void)esc::jacobi(3, 8), std::domain_error);
    CHECK_THROWS_AS((void)esc::jacobi(3, -7), std::domain_error);
    CHECK_THROWS_AS((void)esc::jacobi(3, 0), std::domain_error);
}

TEST_CASE("jacobi equals Euler-criterion Legendre products, odd m <= 501") {
    for (std::uint64_t m = 1; m <= 501; m += 2) {
        for (std::uint64_t n = 0; n < m; ++n) {
            CAPTURE(n);
            CAPTURE(m);
            REQUIRE(esc::jacobi(n, m) == jacobi_oracle(n, m));
        }
    }
}

TEST_CASE("jacobi multiplicativity in the modulus, sampled") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> pick(0, 249);
    int checked = 0;
    while (checked < 4000) {
        std::uint64_t m = 2 * pick(rng) + 1;
        std::uint64_t m2 = 2 * pick(rng) + 1;
        std::uint64_t n = rng() % 1000;
        if (esc::gcd(n, m * m2) != 1) continue;
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(m2);
        REQUIRE(esc::jacobi(n, m) * esc::jacobi(n, m2) == esc::jacobi(n, m * m2));
        ++checked;
    }
}

TEST_CASE("jacobi reciprocity for odd coprime pairs up to 1000") {
    for (std::uint64_t n = 1; n <= 999; n += 2) {
        for (std::uint64_t m = 1; m <= 999; m += 2) {
            if (esc::gcd(n, m) != 1) continue;
            int lhs = esc::jacobi(n, m) * esc::jacobi(m, n);
            int rhs = (((n - 1) / 2) * ((m - 1) / 2)) % 2 == 0 ? 1 : -1;
            if (lhs != rhs) {
                CAPTURE(n);
                CAPTURE(m);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("is_perfect_square") {
    CHECK(esc::is_perfect_square(25));
    CHECK(esc::is_perfect_square(49));  // (2·3+1)²
    CHECK_FALSE(esc::is_perfect_square(2009));
    CHECK(esc::is_perfect_square(0));
    CHECK_FALSE(esc::is_perfect_square(-4));
}

TEST_CASE("is_perfect_square separates k² from k²+1 up to k = 1e6") {
    WideInt sq;
    for (std::uint64_t k = 1; k <= 1000000; ++k) {
        sq = WideInt(static_cast<unsigned long>(k));
        sq *= sq;
        if (!esc::is_perfect_square(sq) || esc::is_perfect_square(sq + 1)) {
            CAPTURE(k);
            REQUIRE(false);
        }
    }
}

TEST_CASE("divisors") {
    CHECK(esc::divisors(12) == std::vector<WideInt>{1, 2, 3, 4, 6, 12});
    CHECK(esc::divisors(49) == std::vector<WideInt>{1, 7, 49});
    CHECK(esc::divisors(2009) == std::vector<WideInt>{1, 7, 41, 49, 287, 2009});
    CHECK(esc::divisors(1) == std::vector<WideInt>{1});
    CHECK_THROWS_AS((void)esc::divisors(0), std::domain_error);
}

TEST_CASE("factorize handles larger composites") {
    auto f = esc::factorize(WideInt("614889782588491410"));  // primorial(15)·...
    WideInt back = 1;
    for (const auto& [p, e] : f) {
        CHECK(esc::is_prime(p));
        for (unsigned i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == WideInt("614889782588491410"));
}

TEST_CASE("crt_solve") {
    Congruence r = esc::crt_solve({{3, 2}, {7, 5}});
    CHECK(r.modulus == 21);
    CHECK(r.residue == 5);
    r = esc::crt_solve({{5, 3}});
    CHECK(r.modulus == 5);
    CHECK(r.residue == 3);
    CHECK_THROWS_AS((void)esc::crt_solve({{4, 1}, {6, 2}}), esc::CrtIncompatible);
    CHECK_THROWS_AS((void)esc::crt_solve({}), std::domain_error);

    // non-coprime but compatible
    r = esc::crt_solve({{4, 1}, {6, 3}});
    CHECK(r.modulus == 12);
    CHECK(r.residue == 9);
}

TEST_CASE("crt_solve incompatibility names an offending input pair") {
    try {
        (void)esc::crt_solve({{5, 1}, {7, 3}, {10, 2}});
        REQUIRE(false);
    } catch (const esc::CrtIncompatible& e) {
        // (5,1) vs (10,2): 1 ≢ 2 (mod 5)
        CHECK(e.lhs.modulus == 5);
        CHECK(e.rhs.modulus == 10);
        CHECK(std::string(e.what()).find("mod 5") != std::string::npos);
    }
}

TEST_CASE("crt_solve solution satisfies every congruence, randomized") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        // build a solvable system around a hidden value
        std::uint64_t hidden = rng() % 100000;
        std::vector<Congruence> sys;
        std::vector<WideInt> mods;
        for (int i = 0; i < 4; ++i) {
            std::uint64_t m = 2 + rng() % 40;
            sys.push_back({WideInt((unsigned long)m), WideInt((unsigned long)(hidden % m))});
            mods.push_back(WideInt((unsigned long)m));
        }
        Congruence r = esc::crt_solve(sys);
        CHECK(r.modulus == esc::lcm_list(mods));
        for (const auto& c : sys) CHECK(r.residue % c.modulus == c.residue);
        CHECK(r.residue >= 0);
        CHECK(r.residue < r.modulus);
    }
}
