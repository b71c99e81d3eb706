#include "oswit/schmidt_number.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oswit {

namespace {

RealVector validate_and_pad(const RealVector& mu, int length) {
  for (int i = 0; i < mu.size(); ++i) {
    if (mu(i) < -1e-12) throw std::invalid_argument("Schmidt coefficients must be nonnegative");
    if (i + 1 < mu.size() && mu(i + 1) > mu(i) + 1e-12) {
      throw std::invalid_argument("Schmidt coefficients must be sorted decreasingly");
    }
  }
  RealVector padded = RealVector::Zero(std::max<int>(length, mu.size()));
  for (int i = 0; i < mu.size(); ++i) padded(i) = std::max(mu(i), 0.0);
  return padded;
}

double max_eig_symmetrized(const RealMatrix& m) {
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Schmidt vector from hyperspherical angles, sorted decreasingly. Sorting is
// without loss of generality: the objective only sees the product multiset.
RealVector schmidt_vector(const std::vector<double>& angles) {
  const int r = static_cast<int>(angles.size()) + 1;
  RealVector s(r);
  double tail = 1.0;
  for (int i = 0; i < r - 1; ++i) {
    s(i) = tail * std::cos(angles[i]);
    tail *= std::sin(angles[i]);
  }
  s(r - 1) = tail;
  std::sort(s.data(), s.data() + r, std::greater<double>());
  return s;
}

double pair_objective(const RealVector& mu, const RealVector& s) {
  const int r = static_cast<int>(s.size());
  std::vector<double> products;
  products.reserve(r * r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) products.push_back(s(a) * s(b));
  }
  std::sort(products.begin(), products.end(), std::greater<double>());
  const int terms = std::min<int>(mu.size(), static_cast<int>(products.size()));
  double value = 0.0;
  for (int j = 0; j < terms; ++j) value += mu(j) * products[j];
  return value;
}

}  // namespace

SchmidtNumberCoefficient lambda_k(const RealVector& mu, int k) {
  if (k < 2 || k > 4) {
    throw std::invalid_argument(
        "lambda_k has closed forms for k in {2,3,4} only; use lambda_k_bruteforce");
  }
  const RealVector p = validate_and_pad(mu, (k - 1) * (k - 1));
  if (k == 2) return {2, p(0), LambdaMethod::ClosedForm3};
  if (k == 3) {
    const double d14 = p(0) - p(3);
    const double s23 = p(1) + p(2);
    const double lam = 0.5 * (p(0) + p(3) + std::sqrt(d14 * d14 + s23 * s23));
    return {3, lam, LambdaMethod::ClosedForm3};
  }
  RealMatrix m1(3, 3), m2(3, 3);
  m1 << p(0), p(1), p(3),
        p(2), p(5), p(6),
        p(4), p(7), p(8);
  m2 << p(0), p(1), p(4),
        p(2), p(3), p(6),
        p(5), p(7), p(8);
  const double lam = std::max(max_eig_symmetrized(m1), max_eig_symmetrized(m2));
  return {4, lam, LambdaMethod::EigenMatrices4};
}

BruteForceResult lambda_k_bruteforce_detail(const RealVector& mu, int k, double grid) {
  if (k < 2) throw std::invalid_argument("Schmidt number must be at least 2");
  if (!(grid > 0.0) || grid > 0.1) {
    throw std::invalid_argument("grid resolution must lie in (0, 0.1]");
  }
  const int r = k - 1;
  const RealVector p = validate_and_pad(mu, r * r);
  if (r == 1) {
    RealVector s(1);
    s(0) = 1.0;
    return {p(0), s};
  }

  const int axes = r - 1;
  const double half_pi = std::numbers::pi / 2.0;
  const int steps = static_cast<int>(std::floor(half_pi / grid)) + 1;

  std::vector<double> angles(axes, 0.0), best_angles(axes, 0.0);
  double best = -1.0;
  std::vector<int> counter(axes, 0);
  while (true) {
    for (int a = 0; a < axes; ++a) angles[a] = std::min(counter[a] * grid, half_pi);
    const double value = pair_objective(p, schmidt_vector(angles));
    if (value > best) {
      best = value;
      best_angles = angles;
    }
    int a = 0;
    for (; a < axes; ++a) {
      if (++counter[a] < steps) break;
      counter[a] = 0;
    }
    if (a == axes) break;
  }

  // Coordinate ascent with a shrinking step around the best grid point.
  double step = 0.5 * grid;
  for (int sweep = 0; sweep < 50; ++sweep) {
    for (int a = 0; a < axes; ++a) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> trial = best_angles;
        trial[a] = std::clamp(trial[a] + dir * step, 0.0, half_pi);
        const double value = pair_objective(p, schmidt_vector(trial));
        if (value > best) {
          best = value;
          best_angles = trial;
        }
      }
    }
    step *= 0.7;
  }
  return {best, schmidt_vector(best_angles)};
}

double lambda_k_bruteforce(const RealVector& mu, int k, double grid) {
  return lambda_k_bruteforce_detail(mu, k, grid).lambda;
}

Witness sn_witness(const HermitianOperator& x, const Bipartition& bp, int k) {
  const auto decomp = osd(x, bp);
  const auto coeff = lambda_k(decomp.mu, k);
  Witness w{WitnessKind::SchmidtNumber, k, coeff.lambda, x, {}};
  const double mu1 = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
  w.certificate.mu1_per_bipartition.emplace_back(bp.label(), mu1);
  w.certificate.critical_alpha = bp.alpha();
  w.certificate.critical_label = bp.label();
  return w;
}

bool extended_ccnr_sn_check(const HermitianOperator& rho, const Bipartition& bp, int k) {
  if (k < 2) throw std::invalid_argument("Schmidt number must be at least 2");
  return ccnr_value(rho, bp) > static_cast<double>(k - 1);
}

}  // namespace oswit
