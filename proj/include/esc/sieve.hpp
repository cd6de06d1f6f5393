#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "esc/identities.hpp"

namespace esc {

/*
 * Residue-class tables for q(α,β,γ) = ((4β+3)γ+(3β+2))(α+1)-(β+2).
 *
 * Expanded, q(x,y,z) = 4xyz+3xy+3xz+2x+4yz+2y+3z is linear in each variable,
 * so fixing two parameters (a,b) and letting one run yields an arithmetic
 * progression of covered q: a class (modulus, residue) whose every member
 * q ≡ residue (mod modulus), q >= residue carries a constructible witness.
 * Besides the six plain "one variable free" instantiations there are six
 * difference substitutions (x = σ-t against y = t-z and the like) and two
 * parity splits (z = (u-a-1)/2 with u, a of different parity); fourteen
 * generating forms in total. Each is described here only by its witness map:
 *   witness(φ) = three linear components in the free parameter φ,
 * and the class is derived as
 *   residue = q(witness(φ_min)),  modulus = q(witness(φ_min+1)) - residue,
 * which makes soundness (witness recovery for every member) hold by
 * construction, with residue always in [0, modulus).
 *
 * Forms 14..16 are translation classes over n = p(α,β,γ) instead of q.
 */

struct CoverClass {
    std::uint64_t modulus = 0;
    std::uint64_t residue = 0;  // smallest witnessed member, < modulus
    std::uint8_t form = 0;      // generating form, index into form table
    std::uint32_t p1 = 0, p2 = 0;  // the two fixed parameters

    bool operator==(const CoverClass&) const = default;
};

// Number of q-covering forms; ids [kQFormCount, kFormCount) are n-classes.
inline constexpr unsigned kQFormCount = 14;
inline constexpr unsigned kFormCount = 17;

const char* form_name(unsigned form);

// True when the class covers values of n = p(α,β,γ) rather than q.
bool is_translation_form(unsigned form);

struct SieveConfig {
    // Classes are kept only if their modulus divides this; 0 = no restriction.
    WideInt modulus_divisor = 0;
    // Range of the two fixed form parameters (b runs to the bound, a <= b).
    unsigned param_bound = 1;
    // Ordered class tables; survivors must escape every stage.
    std::vector<std::vector<CoverClass>> stages;
    // Primes p for the "p divides 4q+5" compositeness filters.
    std::vector<std::uint64_t> small_primes;
};

// Enumerates all fourteen forms over b <= param_bound, a <= b, keeping a
// class when its modulus passes the divisor filter; deduplicated with
// subsume_add semantics (an earlier class with dividing modulus and matching
// residue absorbs the newcomer). Order: b, then a, then form.
std::vector<CoverClass> generate_classes(const SieveConfig& cfg);

// Appends c unless some existing (m', r') subsumes it: m' | c.modulus and
// c.residue ≡ r' (mod m').
std::vector<CoverClass> subsume_add(std::vector<CoverClass> classes, const CoverClass& c);

// Recovers (α,β,γ) with q_poly = q (or p_poly = n for translation forms)
// from the class's form and fixed parameters. Throws if q is not a member.
std::array<WideInt, 3> class_witness(const CoverClass& c, const WideInt& q);

// Streams every q in [q_from, q_to] killed neither by a small-prime divisor
// of 4q+5 nor by any class in any configured stage.
void sieve_survivors(const WideInt& q_from, const WideInt& q_to, const SieveConfig& cfg,
                     const std::function<void(std::uint64_t)>& emit);
std::vector<std::uint64_t> sieve_survivors(const WideInt& q_from, const WideInt& q_to,
                                           const SieveConfig& cfg);

// Survivor stream as text: one decimal q per line.
void write_survivors(std::ostream& os, const WideInt& q_from, const WideInt& q_to,
                     const SieveConfig& cfg);

// The six classes of n ≡ 1 (mod 4) obtained by translating one variable of
// p(α,β,γ) from a small base point: 5+8t, 5+12t, 13+20t, 17+20t, 13+28t,
// 37+52t.
std::vector<CoverClass> translation_classes();

// Text form: modulus<TAB>residue<TAB>family<TAB>p1<TAB>p2, one class per line.
void write_class_table(std::ostream& os, const std::vector<CoverClass>& classes);
std::vector<CoverClass> read_class_table(std::istream& is);

// Ready-made configurations.
// Two-stage table over squarefree 19-smooth moduli, then with 23 adjoined.
SieveConfig appendix_config(unsigned param_bound);
// Unrestricted moduli with the parameter bound sized so that class coverage
// equals the full witness set on [1, q_max] (two fixed parameters above P
// force q > 3P^2+10P+7).
SieveConfig exact_cover_config(std::uint64_t q_max);

}  // namespace esc
