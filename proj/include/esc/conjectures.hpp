#pragma once

#include <array>
#include <optional>
#include <vector>

#include "esc/identities.hpp"

namespace esc {

// Partition of [1, limit] into A (4q+5 an odd square), B (q-polynomial values)
// and the exceptional complement C.
struct QPartition {
    std::uint64_t limit = 0;
    std::vector<bool> a_members;  // index q, valid for 1..limit
    std::vector<bool> b_members;
    std::vector<WideInt> c_members;  // ascending
};

// n with n²+n-1 = q, i.e. 4q+5 = (2n+1)²; nullopt when 4q+5 is not a square.
std::optional<WideInt> in_set_A(const WideInt& q);

// Complete enumeration for one q: walks β (2β <= q), then the base
// m = (4β+3)γ+3β+2 while m <= q+β+2, and divides. Any witness of q has
// m | q+β+2 in that window, so failure is conclusive. beta_cap > 0 restricts
// the β range (diagnostics only); 0 means the forced bound.
std::optional<std::array<WideInt, 3>> in_set_B(const WideInt& q, const WideInt& beta_cap = 0);

// Forward-enumerates q_poly into a bitmap (split across threads by β),
// enumerates A directly, takes C as the complement. Throws std::logic_error
// if A and B ever intersect.
QPartition partition_q(const WideInt& limit);

// Which relation covers q: 1 (4q+5 = (4x+3)(4y+3)), 2 (4q+5 = (4x+5)(4y+5)),
// or 3 (q a q_poly value, params (α,β,γ)).
struct WitnessTag {
    int relation;
    std::vector<WideInt> params;
};

std::optional<WitnessTag> q_conjecture_holds(const WideInt& q);

// Witness with p_poly = n; nullopt unless n ≡ 1 (mod 4), n >= 5, and
// (n-5)/4 is covered (n = 5 itself carries (0,0,0)).
std::optional<std::array<WideInt, 3>> n1_contains(const WideInt& n);

// Exhaustively confirms that no n²+n+β+1 (n <= n_max, β <= beta_max) has a
// divisor ≡ 3β+2 (mod 4β+3).
bool corollary_divisor_check(const WideInt& n_max, const WideInt& beta_max);

}  // namespace esc
