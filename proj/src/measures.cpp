#include "oswit/measures.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace oswit {

namespace {

std::map<std::string, double> bound_formulas(double S, int m) {
  if (m < 2) throw std::invalid_argument("measure bounds need a side dimension of at least 2");
  std::map<std::string, double> b;
  b["CREN"] = 0.5 * (S - 1.0);
  b["Concurrence"] = std::sqrt(2.0 / (static_cast<double>(m) * (m - 1))) * (S - 1.0);
  b["GConcurrence"] = S + 1.0 - m;
  // S <= m holds exactly; clamp the radicand against floating error near S = m.
  const double rad = (m - 1.0) * std::max(m - S, 0.0);
  const double root = std::sqrt(S) + std::sqrt(rad);
  b["GeometricMeasure"] = 1.0 - root * root / (static_cast<double>(m) * m);
  return b;
}

RealVector schmidt_coefficients(const Vector& psi, const Bipartition& bp) {
  const auto& perm = bipartition_permutation(bp);
  const int m = bp.dim_alpha();
  const int n = bp.dim_alpha_bar();
  Matrix reshaped(m, n);
  for (long i = 0; i < psi.size(); ++i) {
    const int t = perm[i];
    reshaped(t / n, t % n) = psi(i);
  }
  Eigen::JacobiSVD<Matrix> svd(reshaped);
  return svd.singularValues();
}

}  // namespace

double s_value(const HermitianOperator& rho, const HermitianOperator& x, double offset) {
  if (!(offset > 0.0)) throw std::invalid_argument("s_value: offset must be positive");
  return std::max(real_trace_product(rho, x) / offset, 1.0);
}

MeasureBoundReport bipartite_bounds(const HermitianOperator& rho, const HermitianOperator& x,
                                    const Bipartition& bp) {
  const auto decomp = osd(x, bp);
  const double mu1 = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
  const int m = std::min(bp.dim_alpha(), bp.dim_alpha_bar());
  MeasureBoundReport report;
  report.S = s_value(rho, x, mu1);
  report.m = m;
  report.context = MeasureContext::Bipartite;
  report.bounds = bound_formulas(report.S, m);
  return report;
}

MeasureBoundReport gme_bounds(const HermitianOperator& rho, const HermitianOperator& x,
                              bool party_dim_m) {
  if (x.num_parties() < 3) {
    throw std::invalid_argument("gme_bounds: need at least three parties");
  }
  const Witness w = gme_witness(x);
  int m = 0;
  if (party_dim_m) {
    m = *std::max_element(x.dims().begin(), x.dims().end());
  } else {
    for (const auto& bp : enumerate_bipartitions(x.dims())) {
      m = std::max(m, std::min(bp.dim_alpha(), bp.dim_alpha_bar()));
    }
  }
  MeasureBoundReport report;
  report.S = s_value(rho, x, w.offset);
  report.m = m;
  report.context = MeasureContext::Gme;
  report.bounds = bound_formulas(report.S, m);
  return report;
}

double pure_state_oracle(const Vector& psi, const Bipartition& bp, PureMeasure measure) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("pure_state_oracle: state vector is not normalized");
  }
  const RealVector s = schmidt_coefficients(psi, bp);
  const int m = static_cast<int>(s.size());  // min of the two side dimensions
  switch (measure) {
    case PureMeasure::Cren: {
      const double sum = s.sum();
      return 0.5 * (sum * sum - 1.0);
    }
    case PureMeasure::Concurrence: {
      double purity = 0.0;
      for (int i = 0; i < m; ++i) purity += s(i) * s(i) * s(i) * s(i);
      return std::sqrt(2.0 * std::max(1.0 - purity, 0.0));
    }
    case PureMeasure::GConcurrence: {
      double prod = 1.0;
      for (int i = 0; i < m; ++i) prod *= s(i) * s(i);
      return m * std::pow(prod, 1.0 / m);
    }
    case PureMeasure::GeometricMeasure:
      return 1.0 - s(0) * s(0);
  }
  throw std::invalid_argument("unknown measure");
}

}  // namespace oswit
