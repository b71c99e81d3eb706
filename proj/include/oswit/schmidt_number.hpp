#pragma once

#include "oswit/witness.hpp"

namespace oswit {

enum class LambdaMethod { ClosedForm3, EigenMatrices4, BruteForce };

/// Offset lambda_k for a Schmidt-number-k witness: an upper bound on the
/// overlap of Schmidt-rank-(k-1) pure states with an operator whose ordered
/// Schmidt coefficients are mu. lambda_2 = mu_1; lambda_k is nondecreasing
/// in k.
struct SchmidtNumberCoefficient {
  int k = 2;
  double lambda = 0.0;
  LambdaMethod method = LambdaMethod::ClosedForm3;
};

/// Closed forms: k=2 -> mu_1; k=3 -> [mu1+mu4+sqrt((mu1-mu4)^2+(mu2+mu3)^2)]/2;
/// k=4 -> largest eigenvalue over the two symmetrized 3x3 coefficient
/// matrices. mu must be decreasing and nonnegative; short vectors are
/// zero-padded. k outside {2,3,4} is rejected (use lambda_k_bruteforce).
SchmidtNumberCoefficient lambda_k(const RealVector& mu, int k);

struct BruteForceResult {
  double lambda = 0.0;
  RealVector maximizer;  // Schmidt vector s, decreasing
};

/// Grid search plus coordinate-ascent refinement over Schmidt vectors of
/// length k-1; maximizes sum_j mu_j tau_j with tau the decreasing sort of the
/// pairwise products {s_a s_b}. Converges to lambda_k from below; any k >= 2.
double lambda_k_bruteforce(const RealVector& mu, int k, double grid);
BruteForceResult lambda_k_bruteforce_detail(const RealVector& mu, int k, double grid);

/// W = lambda_k(osd(x, bp).mu) * identity - x; a negative expectation value
/// certifies Schmidt number >= k.
Witness sn_witness(const HermitianOperator& x, const Bipartition& bp, int k);

/// Extended CCNR check: true iff sum_i mu_i(rho) > k - 1, which violates the
/// Schmidt-number-(k-1) bound and so certifies Schmidt number >= k.
bool extended_ccnr_sn_check(const HermitianOperator& rho, const Bipartition& bp, int k);

}  // namespace oswit
