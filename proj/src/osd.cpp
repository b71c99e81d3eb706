#include "oswit/osd.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "oswit/states.hpp"

namespace oswit {

namespace {

Matrix unvec_row_major(const Vector& v, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = v(r * cols + c);
  }
  return m;
}

// Deterministic phase convention. Each singular pair is defined only up to a
// joint phase; pick the one that makes the A-side operator Hermitian when a
// Hermitian representative exists (Tr(G^2) has unit modulus then), and fix
// the leftover sign from the largest-magnitude entry.
void fix_phase(Matrix& a, Matrix& b) {
  const Complex c = trace_product(a, a);
  if (std::abs(c) > 1e-12) {
    const double phi = std::arg(c) / 2.0;
    const Complex ph = std::exp(Complex(0.0, -phi));
    a *= ph;
    b *= std::conj(ph);
  }
  Complex z(0, 0);
  double best = -1.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int col = 0; col < a.cols(); ++col) {
      const double mag = std::abs(a(r, col));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        z = a(r, col);
      }
    }
  }
  if (best <= 0.0) return;
  double sign = 1.0;
  if (z.real() < -1e-9 * best) {
    sign = -1.0;
  } else if (std::abs(z.real()) <= 1e-9 * best && z.imag() < 0.0) {
    sign = -1.0;
  }
  a *= sign;
  b *= sign;
}

}  // namespace

int OperatorSchmidtDecomposition::effective_rank(double rel_tol) const {
  if (mu.size() == 0 || mu(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < mu.size(); ++i) {
    if (mu(i) > rel_tol * mu(0)) ++r;
  }
  return r;
}

Matrix OperatorSchmidtDecomposition::reconstruct_permuted() const {
  const int m = bipartition.dim_alpha();
  const int n = bipartition.dim_alpha_bar();
  Matrix x = Matrix::Zero(m * n, m * n);
  for (int i = 0; i < mu.size(); ++i) {
    x += mu(i) * Eigen::kroneckerProduct(ops_a[i], ops_b[i]);
  }
  return x;
}

Matrix OperatorSchmidtDecomposition::reconstruct() const {
  return permute_from_bipartition(reconstruct_permuted(), bipartition);
}

const std::vector<int>& bipartition_permutation(const Bipartition& bp) {
  static std::map<std::string, std::vector<int>> cache;
  static std::mutex mutex;

  std::ostringstream key;
  for (int d : bp.dims()) key << d << ',';
  key << ';';
  for (int p : bp.alpha()) key << p << ',';

  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;

  const auto& dims = bp.dims();
  const int n_parties = bp.num_parties();
  long total = 1;
  for (int d : dims) total *= d;

  std::vector<int> perm(total);
  std::vector<int> digits(n_parties);
  for (long r = 0; r < total; ++r) {
    long q = r;
    for (int p = n_parties - 1; p >= 0; --p) {
      digits[p] = static_cast<int>(q % dims[p]);
      q /= dims[p];
    }
    long ia = 0;
    for (int p : bp.alpha()) ia = ia * dims[p] + digits[p];
    long ib = 0;
    for (int p : bp.alpha_bar()) ib = ib * dims[p] + digits[p];
    perm[r] = static_cast<int>(ia * bp.dim_alpha_bar() + ib);
  }
  return cache.emplace(key.str(), std::move(perm)).first->second;
}

Matrix permute_to_bipartition(const Matrix& x, const Bipartition& bp) {
  const auto& perm = bipartition_permutation(bp);
  const long d = x.rows();
  if (d != static_cast<long>(perm.size()) || x.cols() != d) {
    throw std::invalid_argument("operator size does not match the bipartition");
  }
  Matrix out(d, d);
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) out(perm[r], perm[c]) = x(r, c);
  }
  return out;
}

Matrix permute_from_bipartition(const Matrix& x, const Bipartition& bp) {
  const auto& perm = bipartition_permutation(bp);
  const long d = x.rows();
  if (d != static_cast<long>(perm.size()) || x.cols() != d) {
    throw std::invalid_argument("operator size does not match the bipartition");
  }
  Matrix out(d, d);
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) out(r, c) = x(perm[r], perm[c]);
  }
  return out;
}

Matrix realign(const HermitianOperator& x, const Bipartition& bp) {
  if (x.dims() != bp.dims()) {
    throw std::invalid_argument("operator and bipartition dimensions disagree");
  }
  const Matrix xp = permute_to_bipartition(x.data(), bp);
  const int m = bp.dim_alpha();
  const int n = bp.dim_alpha_bar();
  Matrix r(m * m, n * n);
  for (int i = 0; i < m; ++i) {
    for (int ip = 0; ip < m; ++ip) {
      for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
          r(i * m + ip, k * n + kp) = xp(i * n + k, ip * n + kp);
        }
      }
    }
  }
  return r;
}

OperatorSchmidtDecomposition osd(const HermitianOperator& x, const Bipartition& bp,
                                 const OsdOptions& opts) {
  const HermitianOperator* input = &x;
  std::optional<HermitianOperator> perturbed;
  if (opts.break_symmetry && opts.perturbation > 0.0) {
    const HermitianOperator noise = random_density(x.dims(), opts.seed);
    Matrix mixed = (1.0 - opts.perturbation) * x.data() + opts.perturbation * noise.data();
    perturbed.emplace(x.dims(), std::move(mixed), x.label());
    input = &*perturbed;
  }

  const Matrix r = realign(*input, bp);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("singular value decomposition of the realignment failed");
  }

  const int m = bp.dim_alpha();
  const int n = bp.dim_alpha_bar();
  const int s = static_cast<int>(svd.singularValues().size());

  OperatorSchmidtDecomposition out{svd.singularValues(), {}, {}, bp};
  out.ops_a.reserve(s);
  out.ops_b.reserve(s);
  for (int i = 0; i < s; ++i) {
    Matrix a = unvec_row_major(svd.matrixU().col(i), m, m);
    Matrix b = unvec_row_major(svd.matrixV().col(i).conjugate(), n, n);
    fix_phase(a, b);
    out.ops_a.push_back(std::move(a));
    out.ops_b.push_back(std::move(b));
  }

  if (opts.break_symmetry) {
    const int rank = out.effective_rank();
    for (int i = 0; i < rank; ++i) {
      const double ha = (out.ops_a[i] - out.ops_a[i].adjoint().eval()).norm();
      const double hb = (out.ops_b[i] - out.ops_b[i].adjoint().eval()).norm();
      if (std::max(ha, hb) > 1e-6) {
        throw NumericalError(
            "Schmidt operator " + std::to_string(i) +
            " is not Hermitian after symmetry breaking (unresolved degeneracy)");
      }
    }
  }
  return out;
}

std::vector<Matrix> complete_operator_basis(const std::vector<Matrix>& partial, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const int full = dim * dim;
  if (static_cast<int>(partial.size()) > full) {
    throw std::invalid_argument("partial basis has more operators than the space dimension");
  }
  for (const auto& g : partial) {
    if (g.rows() != dim || g.cols() != dim) {
      throw std::invalid_argument("partial basis operator has the wrong shape");
    }
  }
  for (std::size_t i = 0; i < partial.size(); ++i) {
    for (std::size_t j = i; j < partial.size(); ++j) {
      const Complex g = hs_inner(partial[i], partial[j]);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-9) {
        throw std::invalid_argument("partial basis is not orthonormal");
      }
    }
  }

  std::vector<Matrix> result = partial;
  if (static_cast<int>(result.size()) == full) return result;

  // Candidate family: identity, diagonal Gell-Mann, then symmetric and
  // antisymmetric pairs in row-major order; all HS-normalized.
  std::vector<Matrix> candidates;
  candidates.reserve(full);
  candidates.push_back(Matrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
  for (int l = 1; l < dim; ++l) {
    Matrix h = Matrix::Zero(dim, dim);
    for (int j = 0; j < l; ++j) h(j, j) = 1.0;
    h(l, l) = -static_cast<double>(l);
    h /= std::sqrt(static_cast<double>(l) * (l + 1));
    candidates.push_back(std::move(h));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(p, q) = inv_sqrt2;
      sym(q, p) = inv_sqrt2;
      candidates.push_back(std::move(sym));
      Matrix asym = Matrix::Zero(dim, dim);
      asym(p, q) = Complex(0, -inv_sqrt2);
      asym(q, p) = Complex(0, inv_sqrt2);
      candidates.push_back(std::move(asym));
    }
  }

  for (const auto& cand : candidates) {
    if (static_cast<int>(result.size()) == full) break;
    Matrix v = cand;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& g : result) v -= hs_inner(g, v) * g;
    }
    const double norm = v.norm();
    if (norm > 1e-6) result.push_back(v / norm);
  }
  if (static_cast<int>(result.size()) != full) {
    throw NumericalError("operator basis completion failed to span the space");
  }
  return result;
}

}  // namespace oswit
