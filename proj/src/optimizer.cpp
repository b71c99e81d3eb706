#include "oswit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <unsupported/Eigen/KroneckerProduct>

#include "oswit/states.hpp"

namespace oswit {

std::string to_string(Schedule s) {
  switch (s) {
    case Schedule::OscOnly: return "osc-only";
    case Schedule::OpsOnly: return "ops-only";
    case Schedule::Alternating: return "alternating";
    case Schedule::TwoPhase: return "two-phase";
  }
  return "unknown";
}

Schedule schedule_from_string(const std::string& s) {
  if (s == "osc-only" || s == "osc") return Schedule::OscOnly;
  if (s == "ops-only" || s == "ops") return Schedule::OpsOnly;
  if (s == "alternating" || s == "alt") return Schedule::Alternating;
  if (s == "two-phase" || s == "twophase") return Schedule::TwoPhase;
  throw std::invalid_argument("unknown schedule: " + s);
}

std::vector<RealMatrix> so_generators(int n) {
  if (n < 2) throw std::invalid_argument("so_generators: need n >= 2");
  std::vector<RealMatrix> gens;
  gens.reserve(n * (n - 1) / 2);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      RealMatrix g = RealMatrix::Zero(n, n);
      g(p, q) = 1.0;
      g(q, p) = -1.0;
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

namespace {

enum class GradientMode { Visibility, Surrogate, ExpectationOnly };

// Re Tr[(A (x) B) M] on the alpha-first ordering, without forming the
// Kronecker product.
double tilde_trace(const Matrix& a, const Matrix& b, const Matrix& m_perm) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(b.rows());
  Complex total(0, 0);
  for (int i = 0; i < m; ++i) {
    for (int ip = 0; ip < m; ++ip) {
      Complex tr(0, 0);
      for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) tr += b(k, kp) * m_perm(ip * n + kp, i * n + k);
      }
      total += a(i, ip) * tr;
    }
  }
  return total.real();
}

RealVector tilde_vector(const OperatorSchmidtDecomposition& x_osd, const Matrix& state_perm) {
  const int s = static_cast<int>(x_osd.mu.size());
  RealVector t(s);
  for (int i = 0; i < s; ++i) t(i) = tilde_trace(x_osd.ops_a[i], x_osd.ops_b[i], state_perm);
  return t;
}

GradientMode pick_mode(double tr_w_rho, double denom, double tr_w_sigma) {
  if (tr_w_rho < 0.0 && std::abs(denom) > 1e-14) return GradientMode::Visibility;
  if (std::abs(tr_w_sigma) > 1e-12) return GradientMode::Surrogate;
  return GradientMode::ExpectationOnly;
}

RealVector mu_gradient(const RealVector& mu, const RealVector& rt, const RealVector& st,
                       GradientMode mode) {
  const int s = static_cast<int>(mu.size());
  const double mu1 = s > 0 ? mu(0) : 0.0;
  const double denom = mu.dot(rt - st);                  // Tr(X rho) - Tr(X sigma)
  const double numer = mu1 - mu.dot(st);                 // Tr(W sigma)
  const double w_rho = mu1 - mu.dot(rt);                 // Tr(W rho)
  RealVector grad(s);
  switch (mode) {
    case GradientMode::Visibility:
      if (std::abs(denom) < 1e-14) {
        throw NumericalError("visibility gradient: Tr(W rho) equals Tr(W sigma)");
      }
      for (int j = 0; j < s; ++j) {
        const double d1j = j == 0 ? 1.0 : 0.0;
        grad(j) = ((d1j - st(j)) * denom - (rt(j) - st(j)) * numer) / (denom * denom);
      }
      break;
    case GradientMode::Surrogate:
      for (int j = 0; j < s; ++j) {
        const double d1j = j == 0 ? 1.0 : 0.0;
        grad(j) = ((d1j - rt(j)) * numer - w_rho * (d1j - st(j))) / (numer * numer);
      }
      break;
    case GradientMode::ExpectationOnly:
      for (int j = 0; j < s; ++j) {
        const double d1j = j == 0 ? 1.0 : 0.0;
        grad(j) = d1j - rt(j);
      }
      break;
  }
  return grad;
}

// Cached per-bipartition data for one optimization run. rho/sigma are the
// (already perturbed) states.
struct BpContext {
  Bipartition bp;
  Matrix rho_perm;
  Matrix sigma_perm;
  OperatorSchmidtDecomposition rho_osd;
  OperatorSchmidtDecomposition sigma_osd;
};

BpContext make_context(const Bipartition& bp, const HermitianOperator& rho,
                       const HermitianOperator& sigma) {
  return BpContext{bp, permute_to_bipartition(rho.data(), bp),
                   permute_to_bipartition(sigma.data(), bp), osd(rho, bp), osd(sigma, bp)};
}

// Cross-trace matrix P[i][j] = Tr(ops[i] other[j]). Complex: degenerate
// decompositions can carry non-Hermitian Schmidt operators, and the real
// part may only be taken after the two sides' traces are multiplied.
Matrix cross_traces(const std::vector<Matrix>& ops, const std::vector<Matrix>& other) {
  Matrix p(ops.size(), other.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < other.size(); ++j) {
      p(i, j) = trace_product(ops[i], other[j]);
    }
  }
  return p;
}

struct OpsGradientData {
  std::vector<Matrix> side_ops;  // completed to N = d_side^2 operators
  RealVector grad;               // N(N-1)/2 entries, generator enumeration order
};

// Gradient of the visibility with respect to the rotation angles of one
// side's Schmidt operators, at zero rotation. F^S[a][b] = sum_j s_j
// Tr(G_a^X H_j^X) Tr(G_b^Xc H_j^Xc) collects every cross trace the generator
// entries need.
OpsGradientData ops_gradient(const OperatorSchmidtDecomposition& x_osd, const BpContext& ctx,
                             Side side, GradientMode mode) {
  const int s_terms = static_cast<int>(x_osd.mu.size());
  const int d_side = side == Side::A ? ctx.bp.dim_alpha() : ctx.bp.dim_alpha_bar();
  const int n_ops = d_side * d_side;

  OpsGradientData data;
  data.side_ops = side == Side::A ? x_osd.ops_a : x_osd.ops_b;
  if (static_cast<int>(data.side_ops.size()) < n_ops) {
    data.side_ops = complete_operator_basis(data.side_ops, d_side);
  }
  const std::vector<Matrix>& other_ops = side == Side::A ? x_osd.ops_b : x_osd.ops_a;

  const auto& h_side = side == Side::A ? ctx.sigma_osd.ops_a : ctx.sigma_osd.ops_b;
  const auto& h_other = side == Side::A ? ctx.sigma_osd.ops_b : ctx.sigma_osd.ops_a;
  const auto& k_side = side == Side::A ? ctx.rho_osd.ops_a : ctx.rho_osd.ops_b;
  const auto& k_other = side == Side::A ? ctx.rho_osd.ops_b : ctx.rho_osd.ops_a;

  const Matrix p_sig = cross_traces(data.side_ops, h_side);
  const Matrix q_sig = cross_traces(other_ops, h_other);
  const Matrix p_rho = cross_traces(data.side_ops, k_side);
  const Matrix q_rho = cross_traces(other_ops, k_other);

  const RealMatrix f_sig =
      (p_sig * ctx.sigma_osd.mu.cast<Complex>().asDiagonal() * q_sig.transpose()).real();
  const RealMatrix f_rho =
      (p_rho * ctx.rho_osd.mu.cast<Complex>().asDiagonal() * q_rho.transpose()).real();

  double s_tilde = 0.0, r_tilde = 0.0;
  for (int i = 0; i < s_terms; ++i) {
    s_tilde += x_osd.mu(i) * f_sig(i, i);
    r_tilde += x_osd.mu(i) * f_rho(i, i);
  }
  const double mu1 = s_terms > 0 ? x_osd.mu(0) : 0.0;
  const double denom = r_tilde - s_tilde;
  const double numer = mu1 - s_tilde;
  const double w_rho = mu1 - r_tilde;

  if (mode == GradientMode::Visibility && std::abs(denom) < 1e-14) {
    throw NumericalError("visibility gradient: Tr(W rho) equals Tr(W sigma)");
  }

  data.grad.resize(n_ops * (n_ops - 1) / 2);
  int l = 0;
  for (int p = 0; p < n_ops; ++p) {
    for (int q = p + 1; q < n_ops; ++q, ++l) {
      const double mu_p = p < s_terms ? x_osd.mu(p) : 0.0;
      const double mu_q = q < s_terms ? x_osd.mu(q) : 0.0;
      double sx = 0.0, rx = 0.0;
      if (mu_p != 0.0) {
        sx += mu_p * f_sig(q, p);
        rx += mu_p * f_rho(q, p);
      }
      if (mu_q != 0.0) {
        sx -= mu_q * f_sig(p, q);
        rx -= mu_q * f_rho(p, q);
      }
      switch (mode) {
        case GradientMode::Visibility:
          data.grad(l) = (denom * (-sx) - (rx - sx) * numer) / (denom * denom);
          break;
        case GradientMode::Surrogate:
          data.grad(l) = (-rx * numer + w_rho * sx) / (numer * numer);
          break;
        case GradientMode::ExpectationOnly:
          data.grad(l) = -rx;
          break;
      }
    }
  }
  return data;
}

Matrix rebuild(const OperatorSchmidtDecomposition& x_osd, const RealVector& mu,
               const std::vector<Matrix>& ops_a, const std::vector<Matrix>& ops_b,
               double trace_target) {
  const int m = x_osd.bipartition.dim_alpha();
  const int n = x_osd.bipartition.dim_alpha_bar();
  Matrix x = Matrix::Zero(m * n, m * n);
  for (int i = 0; i < mu.size(); ++i) {
    if (mu(i) == 0.0) continue;
    x += mu(i) * Eigen::kroneckerProduct(ops_a[i], ops_b[i]);
  }
  Matrix out = permute_from_bipartition(x, x_osd.bipartition);
  const double tr = out.trace().real();
  if (std::abs(tr) < 1e-9 * std::max(1.0, out.norm())) {
    throw NumericalError("renormalization failed: updated operator is traceless");
  }
  out *= trace_target / tr;
  return 0.5 * (out + out.adjoint().eval());
}

GradientMode current_mode(const OperatorSchmidtDecomposition& x_osd, const RealVector& rt,
                          const RealVector& st) {
  const double mu1 = x_osd.mu.size() > 0 ? x_osd.mu(0) : 0.0;
  const double tr_w_rho = mu1 - x_osd.mu.dot(rt);
  const double tr_w_sigma = mu1 - x_osd.mu.dot(st);
  const double denom = x_osd.mu.dot(rt - st);
  return pick_mode(tr_w_rho, denom, tr_w_sigma);
}

Matrix step_osc_impl(const OperatorSchmidtDecomposition& x_osd, const BpContext& ctx,
                     double eps, double trace_target) {
  const RealVector rt = tilde_vector(x_osd, ctx.rho_perm);
  const RealVector st = tilde_vector(x_osd, ctx.sigma_perm);
  const RealVector grad = mu_gradient(x_osd.mu, rt, st, current_mode(x_osd, rt, st));
  const double norm = grad.norm();
  if (norm < 1e-14) return x_osd.reconstruct();
  const RealVector mu_up = x_osd.mu - (eps / norm) * grad;
  return rebuild(x_osd, mu_up, x_osd.ops_a, x_osd.ops_b, trace_target);
}

Matrix step_ops_impl(const OperatorSchmidtDecomposition& x_osd, const BpContext& ctx,
                     Side side, double eps, double trace_target) {
  const RealVector rt = tilde_vector(x_osd, ctx.rho_perm);
  const RealVector st = tilde_vector(x_osd, ctx.sigma_perm);
  OpsGradientData data = ops_gradient(x_osd, ctx, side, current_mode(x_osd, rt, st));
  const double norm = data.grad.norm();
  if (norm < 1e-14) return x_osd.reconstruct();
  const RealVector v = data.grad / norm;

  // First-order rotation O = 1 - eps sum_l v_l g^(l).
  const int n_ops = static_cast<int>(data.side_ops.size());
  RealMatrix rot = RealMatrix::Identity(n_ops, n_ops);
  int l = 0;
  for (int p = 0; p < n_ops; ++p) {
    for (int q = p + 1; q < n_ops; ++q, ++l) {
      rot(p, q) -= eps * v(l);
      rot(q, p) += eps * v(l);
    }
  }

  const int d_side = static_cast<int>(data.side_ops.front().rows());
  std::vector<Matrix> rotated(n_ops, Matrix::Zero(d_side, d_side));
  for (int i = 0; i < n_ops; ++i) {
    for (int k = 0; k < n_ops; ++k) {
      if (rot(i, k) != 0.0) rotated[i] += rot(i, k) * data.side_ops[k];
    }
  }

  // The first-order rotation drifts from orthogonality at O(eps^2).
  double residual = 0.0;
  for (int i = 0; i < n_ops; ++i) {
    for (int k = i; k < n_ops; ++k) {
      const Complex g = hs_inner(rotated[i], rotated[k]);
      const double expect = i == k ? 1.0 : 0.0;
      const double dev = std::abs(g - expect);
      residual += (i == k ? 1.0 : 2.0) * dev * dev;
    }
  }
  if (std::sqrt(residual) > 1e-8) {
    for (int i = 0; i < n_ops; ++i) {
      for (int k = 0; k < i; ++k) rotated[i] -= hs_inner(rotated[k], rotated[i]) * rotated[k];
      rotated[i] /= rotated[i].norm();
    }
  }

  const int s_terms = static_cast<int>(x_osd.mu.size());
  std::vector<Matrix> new_side(rotated.begin(), rotated.begin() + s_terms);
  if (side == Side::A) {
    return rebuild(x_osd, x_osd.mu, new_side, x_osd.ops_b, trace_target);
  }
  return rebuild(x_osd, x_osd.mu, x_osd.ops_a, new_side, trace_target);
}

}  // namespace

RealVector grad_visibility_wrt_mu(const OperatorSchmidtDecomposition& x_osd,
                                  const HermitianOperator& rho, const HermitianOperator& sigma) {
  const Matrix rho_perm = permute_to_bipartition(rho.data(), x_osd.bipartition);
  const Matrix sigma_perm = permute_to_bipartition(sigma.data(), x_osd.bipartition);
  const RealVector rt = tilde_vector(x_osd, rho_perm);
  const RealVector st = tilde_vector(x_osd, sigma_perm);
  return mu_gradient(x_osd.mu, rt, st, GradientMode::Visibility);
}

RealVector grad_visibility_wrt_ops(const OperatorSchmidtDecomposition& x_osd,
                                   const HermitianOperator& rho, const HermitianOperator& sigma,
                                   Side side) {
  const BpContext ctx = make_context(x_osd.bipartition, rho, sigma);
  return ops_gradient(x_osd, ctx, side, GradientMode::Visibility).grad;
}

HermitianOperator step_osc(const HermitianOperator& x, const HermitianOperator& rho,
                           const HermitianOperator& sigma, const Bipartition& bp,
                           const OptimizerConfig& config) {
  const BpContext ctx = make_context(bp, rho, sigma);
  Matrix up = step_osc_impl(osd(x, bp), ctx, config.step_size, x.trace_real());
  return HermitianOperator::symmetrized(x.dims(), up, x.label());
}

HermitianOperator step_ops(const HermitianOperator& x, const HermitianOperator& rho,
                           const HermitianOperator& sigma, const Bipartition& bp, Side side,
                           const OptimizerConfig& config) {
  const BpContext ctx = make_context(bp, rho, sigma);
  Matrix up = step_ops_impl(osd(x, bp), ctx, side, config.step_size, x.trace_real());
  return HermitianOperator::symmetrized(x.dims(), up, x.label());
}

namespace {

constexpr int kPhase1MaxIters = 5000;
constexpr int kPhase1Window = 100;
constexpr double kPhase1RelSpread = 1e-7;

struct Evaluation {
  double p = kNotDetecting;
  double offset = 0.0;
  int critical = 0;
};

OptimizationTrace run_optimization(const HermitianOperator& x0, const HermitianOperator& rho,
                                   const HermitianOperator& sigma,
                                   const OptimizerConfig& config,
                                   const std::vector<Bipartition>& bps, bool multipartite) {
  if (x0.dims() != rho.dims() || x0.dims() != sigma.dims()) {
    throw std::invalid_argument("optimize: operand dimensions disagree");
  }
  const auto& dims = x0.dims();

  const double eps_mix = config.perturbation_eps;
  Matrix x;
  HermitianOperator rho_p = rho;
  HermitianOperator sigma_p = sigma;
  if (eps_mix > 0.0) {
    const HermitianOperator noise = random_density(dims, config.seed);
    auto mix = [&](const Matrix& m) -> Matrix {
      return (1.0 - eps_mix) * m + eps_mix * noise.data();
    };
    x = mix(x0.data());
    rho_p = HermitianOperator::symmetrized(dims, mix(rho.data()), rho.label());
    sigma_p = HermitianOperator::symmetrized(dims, mix(sigma.data()), sigma.label());
  } else {
    x = x0.data();
  }
  const double trace_target = x.trace().real();

  std::vector<BpContext> contexts;
  contexts.reserve(bps.size());
  for (const auto& bp : bps) contexts.push_back(make_context(bp, rho_p, sigma_p));

  const double tr_rho_true = rho.data().trace().real();
  const double tr_sigma_true = sigma.data().trace().real();

  // p_crit of (offset, X) against the unperturbed states.
  auto evaluate_true = [&](double offset, const Matrix& xm) {
    const double wr = offset * tr_rho_true - trace_product(xm, rho.data()).real();
    const double ws = offset * tr_sigma_true - trace_product(xm, sigma.data()).real();
    if (wr >= 0.0) return kNotDetecting;
    return ws / (ws - wr);
  };

  std::vector<OperatorSchmidtDecomposition> scan;
  auto rescan = [&]() {
    scan.clear();
    scan.reserve(bps.size());
    const HermitianOperator xop = HermitianOperator::symmetrized(dims, x);
    for (const auto& bp : bps) scan.push_back(osd(xop, bp));
  };
  auto evaluate_scan = [&]() {
    Evaluation e;
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const double mu1 = scan[i].mu.size() > 0 ? scan[i].mu(0) : 0.0;
      if (mu1 > scan[e.critical].mu(0) + 1e-12) e.critical = static_cast<int>(i);
      e.offset = std::max(e.offset, mu1);
    }
    e.p = evaluate_true(e.offset, x);
    return e;
  };

  rescan();
  Evaluation eval = evaluate_scan();

  OptimizationTrace trace;
  trace.initial_p_crit = eval.p;
  trace.iterations.push_back({0, eval.p, "init", eval.offset, bps[eval.critical].label()});

  struct Best {
    double p;
    double offset;
    Matrix x;
    std::vector<std::pair<std::string, double>> mu1s;
    int critical;
  };
  auto snapshot_mu1s = [&]() {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < bps.size(); ++i) {
      out.emplace_back(bps[i].label(), scan[i].mu.size() > 0 ? scan[i].mu(0) : 0.0);
    }
    return out;
  };
  Best best{eval.p, eval.offset, x, snapshot_mu1s(), eval.critical};

  int phase = config.schedule == Schedule::TwoPhase ? 1 : 2;
  std::deque<double> phase1_window;
  int converged_run = 0;
  double prev_p = eval.p;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const int crit = eval.critical;
    const BpContext& ctx = contexts[crit];
    std::string kind;

    if (phase == 1 || config.schedule == Schedule::OscOnly) {
      x = step_osc_impl(scan[crit], ctx, config.step_size, trace_target);
      kind = "osc";
    } else if (config.schedule == Schedule::OpsOnly) {
      const HermitianOperator xop = HermitianOperator::symmetrized(dims, x);
      x = step_ops_impl(osd(xop, ctx.bp), ctx, Side::A, config.step_size, trace_target);
      const HermitianOperator xop2 = HermitianOperator::symmetrized(dims, x);
      x = step_ops_impl(osd(xop2, ctx.bp), ctx, Side::B, config.step_size, trace_target);
      kind = "ops";
    } else {
      x = step_osc_impl(scan[crit], ctx, config.step_size, trace_target);
      const HermitianOperator xop = HermitianOperator::symmetrized(dims, x);
      x = step_ops_impl(osd(xop, ctx.bp), ctx, Side::A, config.step_size, trace_target);
      const HermitianOperator xop2 = HermitianOperator::symmetrized(dims, x);
      x = step_ops_impl(osd(xop2, ctx.bp), ctx, Side::B, config.step_size, trace_target);
      kind = "alt";
    }

    rescan();
    eval = evaluate_scan();
    trace.iterations.push_back({iter, eval.p, kind, eval.offset, bps[eval.critical].label()});

    if (eval.p < best.p) best = Best{eval.p, eval.offset, x, snapshot_mu1s(), eval.critical};

    if (phase == 1) {
      if (std::isfinite(eval.p)) {
        phase1_window.push_back(eval.p);
        if (static_cast<int>(phase1_window.size()) > kPhase1Window) phase1_window.pop_front();
      } else {
        phase1_window.clear();
      }
      bool plateau = false;
      if (static_cast<int>(phase1_window.size()) == kPhase1Window) {
        const auto [lo, hi] = std::minmax_element(phase1_window.begin(), phase1_window.end());
        plateau = (*hi - *lo) <= kPhase1RelSpread * std::abs(*hi);
      }
      if (plateau || iter >= kPhase1MaxIters) {
        phase = 2;
        trace.phase1_iterations = iter;
        converged_run = 0;
        prev_p = eval.p;
        continue;
      }
    } else {
      if (std::isfinite(eval.p) && std::isfinite(prev_p)) {
        const double rel = std::abs(eval.p - prev_p) / std::max(std::abs(eval.p), 1e-300);
        converged_run = rel < config.convergence_tol ? converged_run + 1 : 0;
      } else {
        converged_run = 0;
      }
      prev_p = eval.p;
      if (converged_run >= config.convergence_window) break;
    }
  }

  trace.final_p_crit = best.p;
  Witness w;
  w.kind = multipartite && x0.num_parties() >= 3 ? WitnessKind::Gme : WitnessKind::Osd;
  w.offset = best.offset;
  w.observable = HermitianOperator::symmetrized(dims, best.x, "optimized");
  w.certificate.mu1_per_bipartition = best.mu1s;
  w.certificate.critical_alpha = bps[best.critical].alpha();
  w.certificate.critical_label = bps[best.critical].label();
  trace.final_witness = std::move(w);
  return trace;
}

}  // namespace

OptimizationTrace optimize_bipartite(const HermitianOperator& x0, const HermitianOperator& rho,
                                     const HermitianOperator& sigma,
                                     const OptimizerConfig& config) {
  if (x0.num_parties() != 2) {
    throw std::invalid_argument("optimize_bipartite: need exactly two parties");
  }
  return run_optimization(x0, rho, sigma, config, enumerate_bipartitions(x0.dims()), false);
}

OptimizationTrace optimize_multipartite(const HermitianOperator& x0, const HermitianOperator& rho,
                                        const HermitianOperator& sigma,
                                        const OptimizerConfig& config) {
  if (x0.num_parties() < 3) {
    throw std::invalid_argument("optimize_multipartite: need at least three parties");
  }
  return run_optimization(x0, rho, sigma, config, enumerate_bipartitions(x0.dims()), true);
}

}  // namespace oswit
