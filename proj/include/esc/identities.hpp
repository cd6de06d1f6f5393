#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esc/arith.hpp"

namespace esc {

// Type I: exactly one denominator divisible by n; Type II: exactly two.
enum class DecompKind { TypeI, TypeII, TwoTerm, General };

// A decomposition numerator/n = 1/x + 1/y (+ 1/z). The numerator is 4 for
// the main problem, 3 for the two-term split, 5 for the Sierpinski variant.
struct Decomposition {
    WideInt n;
    WideInt numerator = 4;
    WideInt x, y;
    std::optional<WideInt> z;
    DecompKind kind = DecompKind::General;
};

// True iff the defining equation holds exactly:
//   num·x·y·z == n·(xy + yz + zx)   (three terms)
//   num·x·y   == n·(x + y)          (two terms)
// Returns false (never throws) on mismatch or nonpositive entries.
bool verify_decomposition(const Decomposition& d);

// How many of the recorded denominators n divides. Type classification aid.
int count_divisible_by_n(const Decomposition& d);

// Two-term split of 3/n per the residue-class criterion: empty exactly when
// n ≡ 1 (mod 6); otherwise constructs a pair by scanning x over the forced
// window n/3 < x <= ceil(2n/3) testing (3x-n) | nx.
std::optional<Decomposition> two_term_for_3(const WideInt& n);

// 4/(4q+3) = 1/(q+1) + 1/((q+1)(4q+3)), q >= 0.
Decomposition two_term_for_4_3mod4(const WideInt& q);

// 1/(abc) = 1/(a(a+b)c) + 1/(b(a+b)c).
std::pair<WideInt, WideInt> split_unit_fraction(const WideInt& a, const WideInt& b,
                                                const WideInt& c);

// The Type I family: for bc ≡ 1 (mod 4) and n = abc - a - b >= 2,
//   4/n = 1/(a(bc-1)/4) + 1/(a(ac-1)(bc-1)/4) + 1/((ac-1)((bc-1)/4)n).
Decomposition type1_from_abc(const WideInt& a, const WideInt& b, const WideInt& c);

// p(α,β,γ) = (α+1)(4β+3)(4γ+3) - (α+1) - (4β+3); always ≡ 1 (mod 4), >= 5.
WideInt p_poly(const WideInt& alpha, const WideInt& beta, const WideInt& gamma);

// q(α,β,γ) = ((4β+3)γ + (3β+2))(α+1) - (β+2); satisfies 4q+5 = p.
WideInt q_poly(const WideInt& alpha, const WideInt& beta, const WideInt& gamma);

// Parametric witness families. Each certifies n through one defining equation
// and induces a concrete decomposition.
enum class WitnessFamily {
    TypeISystem,         // (a,b,c,d):   (4abc-1)d = (a+b)n
    TypeIISystem,        // (a,b,c,d):   (4abc-1)d = an+b
    TypeIScaled,         // (α,β,γ,δ):   δn = (4αβγδ-1) - 4α²γ
    TypeIIParametric,    // (α,β,γ,δ):   n = (4αβγ-1)δ - 4β²γ
    ProductForm,         // (a,b,c):     n = abc-a-b, bc ≡ 1 (mod 4)
    PolyP,               // (α,β,γ):     n = p(α,β,γ)
    DivisibilitySystem,  // (x,t,λ):     λ | xn+t and 4xt | n+λ
};

const char* witness_family_name(WitnessFamily f);
std::optional<WitnessFamily> witness_family_from_name(const std::string& s);

struct ParamWitness {
    WitnessFamily family;
    std::vector<WideInt> params;
};

// If the family equation holds for (n, w.params), returns the induced
// decomposition (verified before returning); otherwise nullopt.
// Malformed parameter tuples throw std::invalid_argument.
std::optional<Decomposition> check_witness(const WideInt& n, const ParamWitness& w);

// True iff (xn+t)/λ and (n+λ)/(4xt) are both positive integers.
bool divisibility_system_holds(const WideInt& n, const WideInt& x, const WideInt& t,
                               const WideInt& lambda);

// N = n + 4xtλj; the same (x,t,λ) solves the divisibility system for N.
// Throws std::invalid_argument if the system does not hold for n.
WideInt shift_witness(const WideInt& n, const WideInt& x, const WideInt& t,
                      const WideInt& lambda, const WideInt& j);

}  // namespace esc
