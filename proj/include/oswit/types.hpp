#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace oswit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Signals a computation that cannot proceed for numerical reasons
/// (failed decompositions, unresolved degeneracies, singular denominators).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Tr(a b), no conjugation on either factor.
inline Complex trace_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

// Hilbert-Schmidt inner product Tr(a^dagger b).
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  return a.conjugate().cwiseProduct(b).sum();
}

}  // namespace oswit
