#pragma once

#include <string>
#include <vector>

#include "esc/identities.hpp"

namespace esc {

// Certificate for a run of consecutive residue classes of q, all of whose
// members n = 4q+5 decompose Type I. T solves T ≡ 3β+2 (mod 4β+3) for every
// β in the window, so T = (4β+3)γ+3β+2 with γ >= 0, and the classes
// q ≡ -(β+2) (mod T) are consecutive residues.
struct RunCertificate {
    unsigned long length = 0;
    std::vector<WideInt> betas;
    WideInt T;
    std::vector<WideInt> gammas;
    std::vector<Congruence> q_classes;
};

// Solves the CRT system for betas start_beta..start_beta+length-1 (always
// compatible: gcd(4β1+3, 4β2+3) divides 3(β1-β2)), lifting the least
// solution until every γ is nonnegative.
RunCertificate build_run(unsigned long length, const WideInt& start_beta);

// Recomputes the certificate's invariants, then draws `samples` members from
// each class and confirms the witness equation and the induced Type I
// decomposition. Malformed certificates throw; value mismatches return false.
bool verify_run(const RunCertificate& cert, unsigned samples);

// Consecutive-member construction on the Type II side: T = lcm{4β(a)γ(a)-1}
// over a-values written as a = β²γ with γ squarefree, δ picked by T mod 4,
// members n = Tδ-4a, each carrying a parametric Type II witness.
struct Type2Run {
    WideInt T;
    WideInt delta;
    std::vector<WideInt> members;
    std::vector<ParamWitness> witnesses;  // parallel to members
};

Type2Run build_type2_run(const std::vector<WideInt>& a_values);

// JSON object with fields: length, betas, T, gammas, q_classes (as
// [modulus, residue] pairs). Integers are decimal strings.
std::string run_certificate_to_json(const RunCertificate& cert);
RunCertificate run_certificate_from_json(const std::string& text);

}  // namespace esc
