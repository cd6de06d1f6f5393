#include "doctest.h"

#include <optional>

#include "esc/conjectures.hpp"
#include "esc/identities.hpp"

using esc::Decomposition;
using esc::ParamWitness;
using esc::WideInt;
using esc::WitnessFamily;

namespace {

Decomposition triple(const WideInt& n, const WideInt& x, const WideInt& y, const WideInt& z) {
    Decomposition d;
    d.n = n;
    d.x = x;
    d.y = y;
    d.z = z;
    return d;
}

// Independent search for 4/n = 1/x + 1/y + 1/z over the forced window
// n/4 < x <= 3n/4, y <= z. Small n only.
std::optional<std::array<std::uint64_t, 3>> brute_force_triple(std::uint64_t n) {
    for (std::uint64_t x = n / 4 + 1; 4 * x <= 3 * n; ++x) {
        std::uint64_t num = 4 * x - n;
        std::uint64_t den = n * x;
        for (std::uint64_t y = (den + num - 1) / num; num * y <= 2 * den; ++y) {
            std::uint64_t rem = num * y - den;  // 4/n - 1/x - 1/y = rem/(den·y)
            if (rem == 0) continue;             // two-term; we want three here
            if ((den * y) % rem == 0) return std::array<std::uint64_t, 3>{x, y, den * y / rem};
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("verify_decomposition") {
    CHECK(esc::verify_decomposition(triple(5, 2, 4, 20)));
    Decomposition two;
    two.n = 7;
    two.x = 2;
    two.y = 14;
    CHECK(esc::verify_decomposition(two));
    CHECK_FALSE(esc::verify_decomposition(triple(1, 1, 1, 1)));  // 1 is not decomposable
    CHECK_FALSE(esc::verify_decomposition(triple(5, 2, 4, 21)));
    two.y = 13;
    CHECK_FALSE(esc::verify_decomposition(two));
}

TEST_CASE("two_term_for_3 examples") {
    CHECK_FALSE(esc::two_term_for_3(7).has_value());  // 7 ≡ 1 (mod 6)
    auto d5 = esc::two_term_for_3(5);
    REQUIRE(d5.has_value());
    CHECK(d5->x == 2);
    CHECK(d5->y == 10);
    CHECK(esc::verify_decomposition(*d5));
    auto d6 = esc::two_term_for_3(6);
    REQUIRE(d6.has_value());
    CHECK(esc::verify_decomposition(*d6));
    CHECK(d6->x == 3);
    CHECK(d6->y == 6);
}

TEST_CASE("two_term_for_3 empty exactly on n ≡ 1 (mod 6), n <= 1e5") {
    for (std::uint64_t n = 2; n <= 100000; ++n) {
        bool found = esc::two_term_for_3(WideInt((unsigned long)n)).has_value();
        if (found == (n % 6 == 1)) {
            CAPTURE(n);
            REQUIRE(found != (n % 6 == 1));
        }
    }
}

TEST_CASE("two_term_for_3 results verify, n <= 2000") {
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        auto d = esc::two_term_for_3(WideInt((unsigned long)n));
        if (d) {
            CAPTURE(n);
            REQUIRE(esc::verify_decomposition(*d));
            REQUIRE(d->numerator == 3);
        }
    }
}

TEST_CASE("two_term_for_4_3mod4") {
    auto d = esc::two_term_for_4_3mod4(1);
    CHECK(d.n == 7);
    CHECK(d.x == 2);
    CHECK(d.y == 14);
    d = esc::two_term_for_4_3mod4(0);
    CHECK(d.n == 3);
    CHECK(d.x == 1);
    CHECK(d.y == 3);
    d = esc::two_term_for_4_3mod4(5);
    CHECK(d.n == 23);
    CHECK(d.x == 6);
    CHECK(d.y == 138);
    for (std::uint64_t q = 0; q < 500; ++q)
        CHECK(esc::verify_decomposition(esc::two_term_for_4_3mod4(WideInt((unsigned long)q))));
}

TEST_CASE("split_unit_fraction") {
    CHECK(esc::split_unit_fraction(1, 1, 1) == std::pair<WideInt, WideInt>{2, 2});
    CHECK(esc::split_unit_fraction(2, 3, 1) == std::pair<WideInt, WideInt>{10, 15});
    CHECK(esc::split_unit_fraction(1, 2, 5) == std::pair<WideInt, WideInt>{15, 30});
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= 12; ++b)
            for (int c = 1; c <= 12; ++c) {
                auto [d1, d2] = esc::split_unit_fraction(a, b, c);
                // 1/(abc) = 1/d1 + 1/d2  <=>  d1·d2 = abc·(d1+d2)
                CHECK(d1 * d2 == WideInt(a) * b * c * (d1 + d2));
            }
}

TEST_CASE("type1_from_abc") {
    Decomposition d = esc::type1_from_abc(1, 3, 3);
    CHECK(d.n == 5);
    CHECK(d.x == 2);
    CHECK(d.y == 4);
    CHECK(*d.z == 20);

    d = esc::type1_from_abc(42, 7, 7);
    CHECK(d.n == 2009);
    CHECK(d.x == 504);
    CHECK(d.y == 147672);
    CHECK(*d.z == 7063644);

    d = esc::type1_from_abc(1, 3, 7);
    CHECK(d.n == 17);
    CHECK(d.x == 5);
    CHECK(d.y == 30);
    CHECK(*d.z == 510);

    CHECK_THROWS_AS((void)esc::type1_from_abc(1, 3, 4), std::invalid_argument);  // bc ≡ 0
    CHECK_THROWS_AS((void)esc::type1_from_abc(1, 1, 1), std::domain_error);      // n = -1
}

TEST_CASE("p_poly and q_poly") {
    CHECK(esc::p_poly(0, 0, 0) == 5);
    CHECK(esc::p_poly(41, 1, 1) == 2009);
    CHECK(esc::p_poly(0, 1, 0) == 13);
    CHECK(esc::q_poly(0, 0, 0) == 0);
    CHECK(esc::q_poly(0, 0, 1) == 3);
    CHECK(esc::p_poly(0, 0, 1) == 17);
    CHECK(esc::q_poly(41, 1, 1) == 501);
}

TEST_CASE("4q+5 = p for all parameters up to 30") {
    for (int a = 0; a <= 30; ++a)
        for (int b = 0; b <= 30; ++b)
            for (int c = 0; c <= 30; ++c) {
                if (4 * esc::q_poly(a, b, c) + 5 != esc::p_poly(a, b, c)) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(c);
                    REQUIRE(false);
                }
            }
}

TEST_CASE("p values decompose Type I and solve the divisibility system") {
    for (int a = 0; a <= 30; ++a)
        for (int b = 0; b <= 30; ++b)
            for (int c = 0; c <= 30; ++c) {
                WideInt n = esc::p_poly(a, b, c);
                Decomposition d = esc::type1_from_abc(a + 1, 4 * b + 3, 4 * c + 3);
                REQUIRE(d.n == n);
                REQUIRE(esc::verify_decomposition(d));
                // x = 1, t = α+1, λ = 4β+3
                REQUIRE(esc::divisibility_system_holds(n, 1, a + 1, 4 * b + 3));
            }
}

TEST_CASE("type1_from_abc: one denominator divisible by prime n") {
    for (int a = 1; a <= 25; ++a)
        for (int b = 1; b <= 25; ++b)
            for (int c = 1; c <= 25; ++c) {
                if ((b * c) % 4 != 1) continue;
                WideInt n = WideInt(a) * b * c - a - b;
                if (n < 2) continue;
                Decomposition d = esc::type1_from_abc(a, b, c);
                REQUIRE(esc::verify_decomposition(d));
                if (esc::is_prime(n)) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(c);
                    REQUIRE(esc::count_divisible_by_n(d) == 1);
                }
            }
}

TEST_CASE("check_witness families") {
    // the 2009 identity: 2009·(1+293) = (4·1·293·12-1)·42
    auto d = esc::check_witness(2009, {WitnessFamily::TypeISystem, {1, 293, 12, 42}});
    REQUIRE(d.has_value());
    CHECK(esc::verify_decomposition(*d));
    CHECK(d->kind == esc::DecompKind::TypeI);
    CHECK(esc::count_divisible_by_n(*d) == 1);

    // n=5 via the parametric Type II route; induced (a,b,c,d) = (1,1,1,2)
    d = esc::check_witness(5, {WitnessFamily::TypeIIParametric, {1, 1, 1, 3}});
    REQUIRE(d.has_value());
    CHECK(d->x == 5);
    CHECK(d->y == 2);
    CHECK(*d->z == 10);
    CHECK(esc::count_divisible_by_n(*d) == 2);

    CHECK_FALSE(esc::check_witness(5, {WitnessFamily::TypeISystem, {1, 1, 1, 1}}).has_value());

    // scaled Type I route on δn = (4αβγδ-1) - 4α²γ
    // α=1, β=2, γ=1, δ=3: 3n = 24δ-1-4 = 19? -> fabricate from known: δ=e
    // use n=5, (1,2,1,3): 3·5 = (4·1·2·1·3-1) - 4 = 24-1-4 = 19 != 15, fails
    CHECK_FALSE(esc::check_witness(5, {WitnessFamily::TypeIScaled, {1, 2, 1, 3}}).has_value());

    // product form and the polynomial form
    d = esc::check_witness(17, {WitnessFamily::ProductForm, {1, 3, 7}});
    REQUIRE(d.has_value());
    CHECK(d->x == 5);
    d = esc::check_witness(2009, {WitnessFamily::PolyP, {41, 1, 1}});
    REQUIRE(d.has_value());
    CHECK(esc::verify_decomposition(*d));
    CHECK_FALSE(esc::check_witness(2008, {WitnessFamily::PolyP, {41, 1, 1}}).has_value());

    // divisibility system for n=5: (x,t,λ) = (1,1,3)
    d = esc::check_witness(5, {WitnessFamily::DivisibilitySystem, {1, 1, 3}});
    REQUIRE(d.has_value());
    CHECK(esc::verify_decomposition(*d));

    CHECK_THROWS_AS((void)esc::check_witness(5, {WitnessFamily::TypeISystem, {1, 2, 3}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)esc::check_witness(5, {WitnessFamily::PolyP, {1, -1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("scaled Type I witness maps back correctly") {
    // Find instances by brute force over small parameters, then check the
    // induced decomposition.
    int found = 0;
    for (int al = 1; al <= 6; ++al)
        for (int be = 1; be <= 6; ++be)
            for (int ga = 1; ga <= 6; ++ga)
                for (int de = 1; de <= 6; ++de) {
                    WideInt rhs = WideInt(4) * al * be * ga * de - 1 - 4 * al * al * ga;
                    if (rhs <= 0 || rhs % de != 0) continue;
                    WideInt n = rhs / de;
                    if (n < 2) continue;
                    auto d = esc::check_witness(
                        n, {WitnessFamily::TypeIScaled,
                            {WideInt(al), WideInt(be), WideInt(ga), WideInt(de)}});
                    if (WideInt(be) * de - al >= 1) {
                        REQUIRE(d.has_value());
                        REQUIRE(esc::verify_decomposition(*d));
                        ++found;
                    }
                }
    CHECK(found > 10);
}

TEST_CASE("witness certifies every brute-forceable prime n = 4q+1 <= 1000") {
    for (std::uint64_t n = 5; n <= 1000; n += 4) {
        if (!esc::is_prime_u64(n)) continue;
        auto brute = brute_force_triple(n);
        REQUIRE(brute.has_value());  // ESC holds down here
        auto w = esc::n1_contains(WideInt((unsigned long)n));
        REQUIRE(w.has_value());
        auto d = esc::check_witness(WideInt((unsigned long)n),
                                    {WitnessFamily::PolyP, {(*w)[0], (*w)[1], (*w)[2]}});
        REQUIRE(d.has_value());
        REQUIRE(esc::verify_decomposition(*d));
    }
}

TEST_CASE("shift_witness") {
    CHECK(esc::shift_witness(5, 1, 1, 3, 0) == 5);
    CHECK(esc::shift_witness(5, 1, 1, 3, 1) == 17);
    CHECK(esc::shift_witness(5, 1, 1, 3, 10) == 125);
    for (int j = 0; j <= 20; ++j) {
        WideInt N = esc::shift_witness(5, 1, 1, 3, j);
        CHECK(esc::divisibility_system_holds(N, 1, 1, 3));
    }
    CHECK_THROWS_AS((void)esc::shift_witness(6, 1, 1, 3, 1), std::invalid_argument);
}
