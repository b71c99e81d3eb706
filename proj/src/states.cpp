#include "oswit/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oswit {

namespace {

long index_of(const std::vector<int>& dims, const std::vector<int>& digits) {
  long idx = 0;
  for (std::size_t p = 0; p < dims.size(); ++p) idx = idx * dims[p] + digits[p];
  return idx;
}

long total_dim(const std::vector<int>& dims) {
  long d = 1;
  for (int v : dims) d *= v;
  return d;
}

Vector zero_vector(const std::vector<int>& dims) {
  return Vector::Zero(total_dim(dims));
}

NamedState pure_state(std::string name, std::vector<int> dims, Vector psi) {
  psi /= psi.norm();
  NamedState s{std::move(name), dims, psi, projector(dims, psi)};
  return s;
}

Vector ghz(int n) {
  std::vector<int> dims(n, 2);
  Vector v = zero_vector(dims);
  v(0) = 1.0;
  v(v.size() - 1) = 1.0;
  return v;
}

Vector dicke(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("Dicke excitations must lie in [0, n]");
  std::vector<int> dims(n, 2);
  Vector v = zero_vector(dims);
  for (long idx = 0; idx < v.size(); ++idx) {
    if (__builtin_popcountll(static_cast<unsigned long long>(idx)) == k) v(idx) = 1.0;
  }
  return v;
}

Vector hypergraph3() {
  Vector v = Vector::Ones(8);
  v(7) = -1.0;
  return v;
}

Vector singlet4() {
  std::vector<int> dims(4, 2);
  Vector v = zero_vector(dims);
  v(index_of(dims, {0, 0, 1, 1})) = 1.0;
  v(index_of(dims, {1, 1, 0, 0})) = 1.0;
  for (const auto& digits : {std::vector<int>{0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}}) {
    v(index_of(dims, digits)) = -0.5;
  }
  return v;
}

Vector cluster4() {
  std::vector<int> dims(4, 2);
  Vector v = zero_vector(dims);
  v(index_of(dims, {0, 0, 0, 0})) = 1.0;
  v(index_of(dims, {1, 1, 0, 0})) = 1.0;
  v(index_of(dims, {0, 0, 1, 1})) = 1.0;
  v(index_of(dims, {1, 1, 1, 1})) = -1.0;
  return v;
}

Vector comb() {
  std::vector<int> dims(4, 2);
  Vector v = zero_vector(dims);
  v(index_of(dims, {1, 1, 1, 1})) = std::sqrt(2.0);
  v(index_of(dims, {0, 0, 0, 1})) = 1.0;
  v(index_of(dims, {0, 0, 1, 0})) = 1.0;
  v(index_of(dims, {0, 1, 0, 0})) = 1.0;
  v(index_of(dims, {1, 0, 0, 0})) = 1.0;
  return v;
}

Vector bell(int d) {
  std::vector<int> dims{d, d};
  Vector v = zero_vector(dims);
  for (int i = 0; i < d; ++i) v(index_of(dims, {i, i})) = 1.0;
  return v;
}

Vector psi3(double eps) {
  if (eps < 0.0 || 2.0 * eps * eps > 1.0) {
    throw std::invalid_argument("psi3 needs eps in [0, 1/sqrt(2)]");
  }
  std::vector<int> dims{4, 4};
  Vector v = zero_vector(dims);
  v(index_of(dims, {0, 0})) = std::sqrt(1.0 - 2.0 * eps * eps);
  v(index_of(dims, {1, 1})) = eps;
  v(index_of(dims, {2, 2})) = eps;
  return v;
}

NamedState rho3() {
  const std::vector<int> dims{4, 4};
  Vector phi3 = zero_vector(dims);
  phi3(index_of(dims, {0, 0})) = 1.0 / std::sqrt(3.0);
  phi3(index_of(dims, {1, 1})) = 1.0 / std::sqrt(3.0);
  phi3(index_of(dims, {2, 2})) = 1.0 / std::sqrt(3.0);
  Vector pair = zero_vector(dims);
  pair(index_of(dims, {2, 3})) = 1.0;
  pair(index_of(dims, {3, 2})) = 1.0;
  Matrix rho = 0.5 * (phi3 * phi3.adjoint()) + 0.25 * (pair * pair.adjoint());
  return {"rho3", dims, std::nullopt, HermitianOperator(dims, std::move(rho), "rho3")};
}

NamedState upb() {
  const std::vector<int> dims{3, 3};
  auto ket3 = [](std::initializer_list<double> amps) {
    Vector v(3);
    int i = 0;
    for (double a : amps) v(i++) = a;
    return v;
  };
  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<Vector, Vector>> factors;
  factors.emplace_back(ket3({1, 0, 0}), r2 * ket3({1, -1, 0}));
  factors.emplace_back(r2 * ket3({1, -1, 0}), ket3({0, 0, 1}));
  factors.emplace_back(ket3({0, 0, 1}), r2 * ket3({0, 1, -1}));
  factors.emplace_back(r2 * ket3({0, 1, -1}), ket3({1, 0, 0}));
  factors.emplace_back(ket3({1, 1, 1}) / std::sqrt(3.0), ket3({1, 1, 1}) / std::sqrt(3.0));

  Matrix sum = Matrix::Zero(9, 9);
  for (const auto& [a, b] : factors) {
    Vector prod(9);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) prod(i * 3 + k) = a(i) * b(k);
    }
    sum += prod * prod.adjoint();
  }
  Matrix rho = (Matrix::Identity(9, 9) - sum) / 4.0;
  return {"upb", dims, std::nullopt, HermitianOperator(dims, std::move(rho), "upb")};
}

}  // namespace

NamedState make_state(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });

  if (lower.rfind("ghz", 0) == 0) {
    const int n = std::stoi(lower.substr(3));
    if (n < 2 || n > 12) throw std::invalid_argument("ghzN supports 2 <= N <= 12");
    return pure_state(lower, std::vector<int>(n, 2), ghz(n));
  }
  if (lower.rfind("dicke", 0) == 0) {
    const auto dash = lower.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("use dickeN-K");
    const int n = std::stoi(lower.substr(5, dash - 5));
    const int k = std::stoi(lower.substr(dash + 1));
    if (n < 2 || n > 12) throw std::invalid_argument("dickeN-K supports 2 <= N <= 12");
    return pure_state(lower, std::vector<int>(n, 2), dicke(n, k));
  }
  if (lower.rfind("w", 0) == 0 && lower.size() > 1 &&
      std::isdigit(static_cast<unsigned char>(lower[1]))) {
    const int n = std::stoi(lower.substr(1));
    if (n < 2 || n > 12) throw std::invalid_argument("wN supports 2 <= N <= 12");
    return pure_state(lower, std::vector<int>(n, 2), dicke(n, 1));
  }
  if (lower == "h3") return pure_state(lower, {2, 2, 2}, hypergraph3());
  if (lower == "singlet4") return pure_state(lower, {2, 2, 2, 2}, singlet4());
  if (lower == "cluster4") return pure_state(lower, {2, 2, 2, 2}, cluster4());
  if (lower == "comb") return pure_state(lower, {2, 2, 2, 2}, comb());
  if (lower == "upb") return upb();
  if (lower == "rho3") return rho3();
  if (lower.rfind("psi3", 0) == 0) {
    double eps = 0.1;
    const auto colon = lower.find(':');
    if (colon != std::string::npos) {
      const auto eq = lower.find('=', colon);
      if (eq == std::string::npos) throw std::invalid_argument("use psi3:eps=0.1");
      eps = std::stod(lower.substr(eq + 1));
    }
    return pure_state(lower, {4, 4}, psi3(eps));
  }
  if (lower.rfind("bell", 0) == 0) {
    const int d = lower.size() > 4 ? std::stoi(lower.substr(4)) : 2;
    if (d < 2 || d > 16) throw std::invalid_argument("bellD supports 2 <= D <= 16");
    return pure_state(lower, {d, d}, bell(d));
  }
  throw std::invalid_argument("unknown state name: " + name);
}

std::vector<std::string> known_state_names() {
  return {"ghz3",     "ghz4", "w3",  "w4",   "dicke4-2",     "h3",
          "singlet4", "cluster4", "comb", "upb", "rho3", "psi3:eps=0.1", "bell", "bell3"};
}

namespace {

Vector gaussian_vector(std::mt19937_64& gen, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix gaussian_matrix(std::mt19937_64& gen, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = normal(gen);
      const double im = normal(gen);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

Vector random_pure(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Vector v = gaussian_vector(gen, dim);
  return v / v.norm();
}

Vector random_pure_product(const std::vector<int>& dims, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Vector out(1);
  out(0) = 1.0;
  for (int d : dims) {
    Vector local = gaussian_vector(gen, d);
    local /= local.norm();
    Vector next(out.size() * d);
    for (long i = 0; i < out.size(); ++i) {
      for (int j = 0; j < d; ++j) next(i * d + j) = out(i) * local(j);
    }
    out.swap(next);
  }
  return out;
}

HermitianOperator random_density(const std::vector<int>& dims, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int d = static_cast<int>(total_dim(dims));
  const Matrix a = gaussian_matrix(gen, d);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator::symmetrized(dims, rho, "random-density");
}

HermitianOperator random_hermitian(const std::vector<int>& dims, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int d = static_cast<int>(total_dim(dims));
  return HermitianOperator::symmetrized(dims, gaussian_matrix(gen, d), "random-hermitian");
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const Matrix a = gaussian_matrix(gen, dim);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

}  // namespace oswit
