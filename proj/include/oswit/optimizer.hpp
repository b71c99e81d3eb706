#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "oswit/witness.hpp"

namespace oswit {

enum class Schedule { OscOnly, OpsOnly, Alternating, TwoPhase };
enum class Side { A, B };

std::string to_string(Schedule s);
Schedule schedule_from_string(const std::string& s);

struct OptimizerConfig {
  double step_size = 0.001;
  int max_iters = 100000;
  // Converged when the relative p_crit change stays below convergence_tol for
  // convergence_window consecutive iterations.
  double convergence_tol = 1e-8;
  int convergence_window = 100;
  // Weight of the fixed-seed random density matrix mixed into all inputs.
  double perturbation_eps = 1e-4;
  std::uint64_t seed = 0x5EED;
  Schedule schedule = Schedule::TwoPhase;
};

inline constexpr double kNotDetecting = std::numeric_limits<double>::infinity();

struct TraceRow {
  int index = 0;
  double p_crit = kNotDetecting;  // +inf when the witness does not detect rho
  std::string step_kind;
  double mu1 = 0.0;
  std::string critical_bipartition;
};

struct OptimizationTrace {
  std::vector<TraceRow> iterations;
  Witness final_witness;  // best witness seen, evaluated on the unperturbed states
  double initial_p_crit = kNotDetecting;
  double final_p_crit = kNotDetecting;
  int phase1_iterations = 0;  // TwoPhase only
};

/// Generators of SO(n): antisymmetric matrices with +1 at (p,q), -1 at (q,p),
/// enumerated row-major over p < q.
std::vector<RealMatrix> so_generators(int n);

/// Gradient of the critical visibility with respect to the Schmidt
/// coefficients of x_osd, holding the Schmidt operators fixed. Entry j is
/// ((d_1j - st_j) sum_i mu_i (rt_i - st_i) - (rt_j - st_j)(mu_1 - sum_i mu_i st_i))
///   / (sum_i mu_i (rt_i - st_i))^2
/// with rt_i = Tr[(G_i^A (x) G_i^B) rho] and st_i likewise for sigma.
RealVector grad_visibility_wrt_mu(const OperatorSchmidtDecomposition& x_osd,
                                  const HermitianOperator& rho,
                                  const HermitianOperator& sigma);

/// Gradient of the visibility with respect to the SO(N) rotation angles of
/// one side's Schmidt operators, evaluated at zero rotation. N is the squared
/// side dimension; short operator families are completed first. Entries
/// follow the so_generators enumeration.
RealVector grad_visibility_wrt_ops(const OperatorSchmidtDecomposition& x_osd,
                                   const HermitianOperator& rho,
                                   const HermitianOperator& sigma, Side side);

/// One Schmidt-coefficient update: mu -> mu - eps * grad/|grad|, operators
/// fixed, trace renormalized to the input trace.
HermitianOperator step_osc(const HermitianOperator& x, const HermitianOperator& rho,
                           const HermitianOperator& sigma, const Bipartition& bp,
                           const OptimizerConfig& config);

/// One Schmidt-operator update on the given side via a first-order SO(N)
/// rotation against the normalized gradient; re-orthonormalized when the Gram
/// residual exceeds 1e-8; trace renormalized.
HermitianOperator step_ops(const HermitianOperator& x, const HermitianOperator& rho,
                           const HermitianOperator& sigma, const Bipartition& bp,
                           Side side, const OptimizerConfig& config);

/// Gradient descent on the critical visibility for a two-party system.
/// Inputs are perturbed per config; recorded p_crit values and the returned
/// witness refer to the unperturbed rho and sigma.
OptimizationTrace optimize_bipartite(const HermitianOperator& x0,
                                     const HermitianOperator& rho,
                                     const HermitianOperator& sigma,
                                     const OptimizerConfig& config);

/// Multipartite schedule: per iteration the critical bipartition (largest
/// leading Schmidt coefficient) is identified and the scheduled step applied
/// to it; the witness offset is always the post-update maximum over all
/// bipartitions. TwoPhase runs coefficient steps to a plateau first, then
/// alternates coefficient and operator steps.
OptimizationTrace optimize_multipartite(const HermitianOperator& x0,
                                        const HermitianOperator& rho,
                                        const HermitianOperator& sigma,
                                        const OptimizerConfig& config);

}  // namespace oswit
