#pragma once

#include <string>
#include <vector>

#include "oswit/types.hpp"

namespace oswit {

/// Dense Hermitian operator on a tensor product of finite-dimensional parties.
/// Party 0 owns the most significant index (leftmost ket symbol), so for two
/// qubits the basis order is |00>, |01>, |10>, |11>.
class HermitianOperator {
 public:
  // Null operator (one trivial party, zero matrix); placeholder for
  // default-constructed aggregates.
  HermitianOperator() : dims_{1}, data_(Matrix::Zero(1, 1)) {}
  HermitianOperator(std::vector<int> dims, Matrix data, std::string label = "");

  static HermitianOperator identity(const std::vector<int>& dims);
  // (m + m^dagger)/2 before the Hermiticity check; for cleaning round-off
  // drift on operators that are Hermitian by construction.
  static HermitianOperator symmetrized(std::vector<int> dims, const Matrix& m,
                                       std::string label = "");

  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  int num_parties() const { return static_cast<int>(dims_.size()); }
  const Matrix& data() const { return data_; }
  const std::string& label() const { return label_; }

  double trace_real() const { return data_.trace().real(); }
  double frobenius_norm() const { return data_.norm(); }

 private:
  std::vector<int> dims_;
  Matrix data_;
  std::string label_;
};

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

/// Traces out every party not listed in `keep`; result parties stay in their
/// original relative order. Total trace is preserved.
HermitianOperator partial_trace(const HermitianOperator& x, const std::vector<int>& keep);

/// |psi><psi| on the given party dimensions.
HermitianOperator projector(const std::vector<int>& dims, const Vector& psi,
                            std::string label = "");

// Re Tr(a b); the imaginary part vanishes for Hermitian inputs.
double real_trace_product(const HermitianOperator& a, const HermitianOperator& b);

bool is_density_matrix(const HermitianOperator& rho, double psd_tol = 1e-9,
                       double trace_tol = 1e-9);

}  // namespace oswit
