#include "oswit/witness.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace oswit {

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::Fidelity: return "fidelity";
    case WitnessKind::Osd: return "osd";
    case WitnessKind::SchmidtNumber: return "schmidt-number";
    case WitnessKind::Gme: return "gme";
  }
  return "unknown";
}

Matrix Witness::matrix() const {
  const int d = observable.dim();
  return offset * Matrix::Identity(d, d) - observable.data();
}

namespace {

void require_state(const HermitianOperator& rho, const char* who) {
  if (!is_density_matrix(rho)) {
    throw std::invalid_argument(std::string(who) + ": input is not a density matrix");
  }
}

// Largest vector Schmidt coefficient of psi across bp.
double leading_schmidt_coefficient(const Vector& psi, const Bipartition& bp) {
  const auto& perm = bipartition_permutation(bp);
  const int m = bp.dim_alpha();
  const int n = bp.dim_alpha_bar();
  Matrix reshaped(m, n);
  for (long i = 0; i < psi.size(); ++i) {
    const int t = perm[i];
    reshaped(t / n, t % n) = psi(i);
  }
  Eigen::JacobiSVD<Matrix> svd(reshaped);
  return svd.singularValues()(0);
}

WitnessCertificate certificate_from(const std::vector<Bipartition>& bps,
                                    const std::vector<double>& mu1s) {
  WitnessCertificate cert;
  int best = 0;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    cert.mu1_per_bipartition.emplace_back(bps[i].label(), mu1s[i]);
    if (mu1s[i] > mu1s[best] + 1e-12) best = static_cast<int>(i);
  }
  cert.critical_alpha = bps[best].alpha();
  cert.critical_label = bps[best].label();
  return cert;
}

}  // namespace

Witness fidelity_witness(const Vector& psi, const std::vector<int>& dims) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity_witness: state vector is not normalized");
  }
  const auto bps = enumerate_bipartitions(dims);
  std::vector<double> alphas;
  alphas.reserve(bps.size());
  for (const auto& bp : bps) {
    const double s1 = leading_schmidt_coefficient(psi, bp);
    alphas.push_back(s1 * s1);
  }
  Witness w{WitnessKind::Fidelity, 0, *std::max_element(alphas.begin(), alphas.end()),
            projector(dims, psi), certificate_from(bps, alphas)};
  return w;
}

Witness osd_witness(const HermitianOperator& x, const Bipartition& bp) {
  const auto decomp = osd(x, bp);
  const double mu1 = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
  Witness w{WitnessKind::Osd, 0, mu1, x, certificate_from({bp}, {mu1})};
  return w;
}

double ccnr_value(const HermitianOperator& rho, const Bipartition& bp) {
  require_state(rho, "ccnr_value");
  return osd(rho, bp).mu.sum();
}

HermitianOperator schmidt_operator_observable(const HermitianOperator& rho,
                                              const Bipartition& bp) {
  const auto decomp = osd(rho, bp);
  const int rank = decomp.effective_rank();
  const int m = bp.dim_alpha();
  const int n = bp.dim_alpha_bar();
  Matrix x = Matrix::Zero(m * n, m * n);
  for (int i = 0; i < rank; ++i) {
    x += Eigen::kroneckerProduct(decomp.ops_a[i], decomp.ops_b[i]);
  }
  return HermitianOperator::symmetrized(rho.dims(), permute_from_bipartition(x, bp),
                                        "schmidt-ops(" + rho.label() + ")");
}

Witness ccnr_witness(const HermitianOperator& rho, const Bipartition& bp) {
  require_state(rho, "ccnr_witness");
  HermitianOperator x = schmidt_operator_observable(rho, bp);
  const auto decomp = osd(x, bp);
  const double mu1 = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
  Witness w{WitnessKind::Osd, 0, mu1, std::move(x), certificate_from({bp}, {mu1})};
  return w;
}

Witness gme_witness(const HermitianOperator& x) {
  if (x.num_parties() < 2) {
    throw std::invalid_argument("gme_witness: need at least two parties");
  }
  const auto bps = enumerate_bipartitions(x.dims());
  if (x.num_parties() == 2) return osd_witness(x, bps.front());

  std::vector<double> mu1s;
  mu1s.reserve(bps.size());
  double mu = 0.0;
  for (const auto& bp : bps) {
    const auto decomp = osd(x, bp);
    const double m1 = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
    mu1s.push_back(m1);
    mu = std::max(mu, m1);
  }
  Witness w{WitnessKind::Gme, 0, mu, x, certificate_from(bps, mu1s)};
  return w;
}

double evaluate(const Witness& w, const HermitianOperator& rho) {
  if (w.observable.dim() != rho.dim()) {
    throw std::invalid_argument("evaluate: dimension mismatch");
  }
  const Complex val =
      w.offset * rho.data().trace() - trace_product(w.observable.data(), rho.data());
  if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val.real()))) {
    throw NumericalError("witness expectation value has a large imaginary residual");
  }
  return val.real();
}

std::optional<double> visibility(const Witness& w, const HermitianOperator& rho,
                                 const HermitianOperator& sigma) {
  const double wr = evaluate(w, rho);
  const double ws = evaluate(w, sigma);
  if (ws < -1e-9) {
    throw std::invalid_argument("visibility: the noise state is itself detected");
  }
  if (wr >= 0.0) return std::nullopt;
  return ws / (ws - wr);
}

}  // namespace oswit
