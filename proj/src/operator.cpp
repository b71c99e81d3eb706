#include "oswit/operator.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace oswit {

namespace {

int product_of(const std::vector<int>& dims) {
  int d = 1;
  for (int v : dims) d *= v;
  return d;
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("operator needs at least one party");
  for (int v : dims) {
    if (v < 1) throw std::invalid_argument("party dimensions must be positive");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(std::vector<int> dims, Matrix data, std::string label)
    : dims_(std::move(dims)), data_(std::move(data)), label_(std::move(label)) {
  check_dims(dims_);
  const int d = product_of(dims_);
  if (data_.rows() != d || data_.cols() != d) {
    throw std::invalid_argument("matrix size does not match the product of party dimensions");
  }
  const double herm = (data_ - data_.adjoint()).norm();
  if (herm > 1e-10 * std::max(1.0, data_.norm())) {
    throw std::invalid_argument("matrix is not Hermitian: residual " + std::to_string(herm));
  }
}

HermitianOperator HermitianOperator::identity(const std::vector<int>& dims) {
  check_dims(dims);
  const int d = product_of(dims);
  return HermitianOperator(dims, Matrix::Identity(d, d), "identity");
}

HermitianOperator HermitianOperator::symmetrized(std::vector<int> dims, const Matrix& m,
                                                 std::string label) {
  Matrix h = 0.5 * (m + m.adjoint().eval());
  return HermitianOperator(std::move(dims), std::move(h), std::move(label));
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Matrix data = Eigen::kroneckerProduct(a.data(), b.data());
  std::string label = a.label().empty() || b.label().empty()
                          ? ""
                          : a.label() + " (x) " + b.label();
  return HermitianOperator(std::move(dims), std::move(data), std::move(label));
}

HermitianOperator partial_trace(const HermitianOperator& x, const std::vector<int>& keep) {
  const auto& dims = x.dims();
  const int n = x.num_parties();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> kept(n, false);
  for (int p : keep) {
    if (p < 0 || p >= n) throw std::invalid_argument("partial_trace: party index out of range");
    if (kept[p]) throw std::invalid_argument("partial_trace: duplicate party index");
    kept[p] = true;
  }

  std::vector<int> keep_sorted, traced;
  for (int p = 0; p < n; ++p) (kept[p] ? keep_sorted : traced).push_back(p);

  // Big-endian strides: party 0 is most significant.
  std::vector<long> stride(n, 1);
  for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

  std::vector<int> out_dims;
  long d_keep = 1, d_tr = 1;
  for (int p : keep_sorted) {
    out_dims.push_back(dims[p]);
    d_keep *= dims[p];
  }
  for (int p : traced) d_tr *= dims[p];

  auto compose = [&](long rk, long rt) {
    long idx = 0;
    long q = rk;
    for (int i = static_cast<int>(keep_sorted.size()) - 1; i >= 0; --i) {
      const int p = keep_sorted[i];
      idx += (q % dims[p]) * stride[p];
      q /= dims[p];
    }
    q = rt;
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      const int p = traced[i];
      idx += (q % dims[p]) * stride[p];
      q /= dims[p];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(d_keep, d_keep);
  for (long r = 0; r < d_keep; ++r) {
    for (long c = 0; c < d_keep; ++c) {
      Complex sum(0, 0);
      for (long t = 0; t < d_tr; ++t) sum += x.data()(compose(r, t), compose(c, t));
      out(r, c) = sum;
    }
  }
  return HermitianOperator(out_dims, std::move(out));
}

HermitianOperator projector(const std::vector<int>& dims, const Vector& psi, std::string label) {
  check_dims(dims);
  if (psi.size() != product_of(dims)) {
    throw std::invalid_argument("state vector size does not match party dimensions");
  }
  Matrix p = psi * psi.adjoint();
  return HermitianOperator(dims, std::move(p), std::move(label));
}

double real_trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return trace_product(a.data(), b.data()).real();
}

bool is_density_matrix(const HermitianOperator& rho, double psd_tol, double trace_tol) {
  if (std::abs(rho.trace_real() - 1.0) > trace_tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.data(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -psd_tol;
}

}  // namespace oswit
