#pragma once

#include <cstdint>
#include <vector>

#include "oswit/bipartition.hpp"
#include "oswit/operator.hpp"
#include "oswit/types.hpp"

namespace oswit {

struct OsdOptions {
  // Mix eps of a fixed-seed random density matrix into the operator before
  // decomposing. Degenerate Schmidt coefficients can otherwise yield
  // non-Hermitian Schmidt operators; the perturbation splits them.
  bool break_symmetry = false;
  double perturbation = 1e-4;
  std::uint64_t seed = 0x5EED;
};

/// X = sum_i mu_i ops_a[i] (x) ops_b[i] on the alpha (x) alpha_bar ordering of
/// the bipartition. mu is decreasing and nonnegative; each side's operators
/// are Hilbert-Schmidt orthonormal. Coefficients below 1e-12 * mu_1 are kept
/// so indices stay aligned with the gradient formulas.
struct OperatorSchmidtDecomposition {
  RealVector mu;
  std::vector<Matrix> ops_a;  // m x m
  std::vector<Matrix> ops_b;  // n x n
  Bipartition bipartition;

  int effective_rank(double rel_tol = 1e-10) const;
  Matrix reconstruct_permuted() const;  // alpha-first ordering
  Matrix reconstruct() const;           // original party ordering
};

/// Index permutation that moves the alpha parties to the front (alpha order,
/// then alpha_bar order); perm[original_index] = permuted_index. Computed once
/// per (dims, alpha) pair and cached.
const std::vector<int>& bipartition_permutation(const Bipartition& bp);

Matrix permute_to_bipartition(const Matrix& x, const Bipartition& bp);
Matrix permute_from_bipartition(const Matrix& x, const Bipartition& bp);

/// The m^2 x n^2 realignment: entry at row (i,i'), column (k,k') equals
/// <ik|X|i'k'> after permuting parties so alpha precedes alpha_bar. Its
/// singular values are the operator Schmidt coefficients.
Matrix realign(const HermitianOperator& x, const Bipartition& bp);

OperatorSchmidtDecomposition osd(const HermitianOperator& x, const Bipartition& bp,
                                 const OsdOptions& opts = {});

/// Extends `partial` (Hilbert-Schmidt orthonormal, dim x dim) to a full basis
/// of dim^2 operators. The first entries are exactly `partial`; the rest are
/// drawn by Gram-Schmidt from the normalized identity plus generalized
/// Gell-Mann candidates, in a fixed order.
std::vector<Matrix> complete_operator_basis(const std::vector<Matrix>& partial, int dim);

}  // namespace oswit
