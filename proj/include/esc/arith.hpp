#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace esc {

// Exact signed integer. Everything in this library is integer arithmetic;
// there is no floating point anywhere.
using WideInt = mpz_class;

struct Congruence {
    WideInt modulus;  // >= 1
    WideInt residue;  // in [0, modulus)

    bool operator==(const Congruence&) const = default;
};

// Thrown by crt_solve when two input congruences cannot be satisfied
// simultaneously; the message names the offending pair.
class CrtIncompatible : public std::runtime_error {
  public:
    CrtIncompatible(const Congruence& a, const Congruence& b);
    Congruence lhs, rhs;
};

// gcd(a, b) >= 0; gcd(0, 0) = 0.
WideInt gcd(const WideInt& a, const WideInt& b);

// lcm of a list of positive integers; empty list -> 1.
WideInt lcm_list(const std::vector<WideInt>& xs);

// Smallest integer >= num/den. den must be positive.
WideInt ceil_div(const WideInt& num, const WideInt& den);

// Deterministic primality test. Uses the first 13 prime bases, which decide
// primality for all n < 3.3e24; inputs up to 2^64 take a machine-word path.
bool is_prime(const WideInt& n);
bool is_prime_u64(std::uint64_t n);

// Jacobi symbol (n/m) for odd m >= 1, extended with the Kronecker convention
// (n/m) = 0 when gcd(n, m) >= 2. Negative n is reduced mod m first.
int jacobi(const WideInt& n, const WideInt& m);

// True iff n = k^2 for some k >= 0. Exact integer square root.
bool is_perfect_square(const WideInt& n);

// Prime factorization of n >= 1 as (prime, exponent) pairs, primes ascending.
// Trial division up to trial_bound, then Pollard rho on the remaining
// cofactor.
std::vector<std::pair<WideInt, unsigned>> factorize(const WideInt& n,
                                                    std::uint64_t trial_bound = 8192);

// All positive divisors of n >= 1, ascending.
std::vector<WideInt> divisors(const WideInt& n);

// Solves a simultaneous system of congruences. Moduli need not be coprime;
// every pair must be compatible (r_i ≡ r_j mod gcd(m_i, m_j)). The result
// modulus is the lcm of the inputs and the residue is the unique solution
// in [0, lcm).
Congruence crt_solve(const std::vector<Congruence>& congruences);

}  // namespace esc
