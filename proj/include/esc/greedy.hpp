#pragma once

#include <optional>
#include <vector>

#include "esc/identities.hpp"

namespace esc {

// One algorithm step: x_j = floor(n/num) + j, y_j = ceil(n·x_j / (num·x_j - n)),
// r_j ≡ -n·x_j (mod num·x_j - n) with r_j in [0, num·x_j - n - 1].
// r_j = 0 is exactly the two-term stop.
struct GreedyStep {
    unsigned long j;
    WideInt x, y, r;
};

enum class GreedyStop { TwoTerm, ThreeTerm, Exhausted };

struct GreedyTrace {
    WideInt n;
    int numerator = 4;
    unsigned long max_steps = 0;
    std::vector<GreedyStep> steps;
    GreedyStop stop = GreedyStop::Exhausted;
    std::optional<Decomposition> result;  // set unless Exhausted
};

// Runs the stepwise unit-fraction search for numerator/n, numerator in {4,5}.
// Exhausted is a normal outcome, not an error.
GreedyTrace greedy_decompose(const WideInt& n, int numerator, unsigned long max_steps);

// Stopping criterion for n = 4q+1 at step j, via the divisibility test on
// (4q+1)(q+j)(s+1), where (4q+1)(q+j) = s(4j-1) + r, 0 <= r <= 4j-2.
// r = 0 (the two-term stop) counts as stopping.
bool converges_at(const WideInt& q, const WideInt& j);

// Equivalent criterion via (4j-1)-r | (4q+1)²(q+j)².
bool converges_at_squared(const WideInt& q, const WideInt& j);

// Runs the search on n = abc-a-b (bc ≡ 1 mod 4) with the step budget
// a(ac-1)(bc-1)/4 - floor(n/4) + 1, within which it provably terminates.
// Throws std::logic_error if the search exhausts anyway.
GreedyTrace greedy_product_class_check(const WideInt& a, const WideInt& b, const WideInt& c);

// Smallest prime 4·L·t + 1 with t <= t_max, L = lcm{3,7,...,4j-1, 2,5,...,3j-1}.
// Such a prime needs more than j steps.
std::optional<WideInt> adversarial_n(const WideInt& j, const WideInt& t_max);

}  // namespace esc
