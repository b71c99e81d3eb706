// Acceptance suite: runs every headline check at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "oswit/measures.hpp"
#include "oswit/repro.hpp"
#include "oswit/schmidt_number.hpp"
#include "oswit/states.hpp"

using namespace oswit;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& description) {
  if (!pass) ++g_failures;
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, description.c_str());
  std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

HermitianOperator white_noise(const std::vector<int>& dims) {
  HermitianOperator id = HermitianOperator::identity(dims);
  return HermitianOperator(dims, id.data() / static_cast<double>(id.dim()));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---- criterion 1: fidelity-witness visibilities, exact ----------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool pass = true;
  for (const auto& b : repro::table1_benchmarks()) {
    const auto s = make_state(b.state);
    const Witness w = fidelity_witness(*s.pure, s.dims);
    const auto p = visibility(w, s.density, white_noise(s.dims));
    const double err = p ? std::abs(*p - b.p_fid_reference)
                         : std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
    pass = pass && err <= 1e-9;
  }
  const double wall = seconds_since(t0);
  pass = pass && wall < 1.0;
  report(1, pass,
         "fidelity visibilities for W3, H3, W4, D4, Psi4 exact (max err " + fmt(worst) +
             ", " + fmt(wall) + " s)");
}

// ---- criteria 2 and 4: optimized visibilities -------------------------------

void criterion_2_and_4() {
  bool pass2 = true;
  std::string detail2;
  for (const auto& b : repro::table1_benchmarks()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto trace = repro::run_benchmark(b);
    const double wall = seconds_since(t0);
    const bool ok = trace.final_p_crit <= b.p_osd_reference + 0.005 && wall < 600.0;
    pass2 = pass2 && ok;
    detail2 += b.state + "=" + fmt(trace.final_p_crit);
    if (b.state == "w3") {
      // Where the optimized value is first reached, counted from the start of
      // the alternating phase.
      int first = -1;
      for (const auto& row : trace.iterations) {
        if (row.index > trace.phase1_iterations &&
            row.p_crit <= b.p_osd_reference + 0.005) {
          first = row.index - trace.phase1_iterations;
          break;
        }
      }
      detail2 += " (reached at alternating iteration " + std::to_string(first) + ")";
    }
    detail2 += ", ";
  }
  report(2, pass2, "optimized visibilities reach the reference column: " + detail2);

  bool pass4 = true;
  std::string detail4;
  for (const auto& b : repro::extra_benchmarks()) {
    const auto trace = repro::run_benchmark(b);
    pass4 = pass4 && trace.final_p_crit <= b.p_osd_reference + 0.005;
    detail4 += b.state + "=" + fmt(trace.final_p_crit) + ", ";
  }
  report(4, pass4, "comb and cluster-state visibilities: " + detail4);
}

// ---- criterion 3: bound entangled target from a random start ----------------

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = repro::suite_appendix_c3();
  const double wall = seconds_since(t0);
  bool pass = wall < 300.0;
  std::string detail;
  for (const auto& r : rows) {
    pass = pass && r.pass;
    detail += r.name + "=" + fmt(r.computed) + ", ";
  }
  report(3, pass, detail + fmt(wall) + " s");
}

// ---- criterion 5: Schmidt-number results ------------------------------------

void criterion_5() {
  const auto rows = repro::suite_appendix_a();
  bool pass = true;
  std::string detail;
  for (const auto& r : rows) {
    pass = pass && r.pass;
    detail += r.name + "=" + fmt(r.computed) + ", ";
  }
  report(5, pass, detail);
}

// ---- criterion 6: no improvement below the GHZ optimum ----------------------

void criterion_6() {
  const auto ghz = make_state("ghz3");
  OptimizerConfig config;
  config.max_iters = 15000;
  const auto trace =
      optimize_multipartite(ghz.density, ghz.density, white_noise(ghz.dims), config);
  const double floor = 3.0 / 7.0 - 1e-6;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& row : trace.iterations) lowest = std::min(lowest, row.p_crit);
  const bool pass = lowest >= floor && trace.final_p_crit >= floor;
  report(6, pass,
         "GHZ3 optimization never goes below 3/7 (lowest " + fmt(lowest) + ", final " +
             fmt(trace.final_p_crit) + ")");
}

// ---- criterion 7: property suites -------------------------------------------

bool prop_osd_invariants() {
  std::uint64_t seed = 50000;
  for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {3, 3}}) {
    const Bipartition bp(dims, {0});
    for (int t = 0; t < 67; ++t) {
      const auto x = random_hermitian(dims, seed++);
      const auto d = osd(x, bp);
      for (std::size_t i = 0; i < d.ops_a.size(); ++i) {
        for (std::size_t j = 0; j < d.ops_a.size(); ++j) {
          const double expect = i == j ? 1.0 : 0.0;
          if (std::abs(hs_inner(d.ops_a[i], d.ops_a[j]) - expect) > 1e-9) return false;
          if (std::abs(hs_inner(d.ops_b[i], d.ops_b[j]) - expect) > 1e-9) return false;
        }
      }
      const double norm = x.frobenius_norm();
      if ((d.reconstruct() - x.data()).norm() > 1e-9 * std::max(1.0, norm)) return false;
      if (std::abs(d.mu.squaredNorm() - norm * norm) > 1e-9 * norm * norm) return false;
    }
  }
  return true;
}

bool prop_product_nonnegativity() {
  std::uint64_t seed = 60000;
  std::vector<Witness> witnesses;
  std::vector<Bipartition> partitions;

  const auto bell = make_state("bell");
  const Bipartition bp2(bell.dims, {0});
  witnesses.push_back(osd_witness(bell.density, bp2));
  partitions.push_back(bp2);
  witnesses.push_back(ccnr_witness(bell.density, bp2));
  partitions.push_back(bp2);

  const auto w3 = make_state("w3");
  const auto wg = gme_witness(w3.density);
  for (const auto& bp : enumerate_bipartitions(w3.dims)) {
    witnesses.push_back(wg);
    partitions.push_back(bp);
  }

  const Bipartition bp33({3, 3}, {0});
  witnesses.push_back(osd_witness(random_hermitian({3, 3}, 61), bp33));
  partitions.push_back(bp33);

  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    const Matrix wm = permute_to_bipartition(witnesses[w].matrix(), partitions[w]);
    for (int t = 0; t < 1000; ++t) {
      const Vector prod = random_pure_product(
          {partitions[w].dim_alpha(), partitions[w].dim_alpha_bar()}, seed++);
      if ((prod.adjoint() * wm * prod)(0, 0).real() < -1e-8) return false;
    }
  }
  return true;
}

bool prop_gradients_vs_finite_differences() {
  const double h = 1e-6;
  std::uint64_t seed = 70000;
  const std::vector<int> dims{2, 3};
  const Bipartition bp(dims, {0});
  double worst_mu = 0.0, worst_ops = 0.0;
  for (int t = 0; t < 30; ++t) {
    Vector psi = random_pure(6, seed++);
    const Matrix proj = psi * psi.adjoint();
    const auto x = HermitianOperator::symmetrized(
        dims, 0.9 * proj + 0.1 * random_density(dims, seed++).data());
    const auto rho = HermitianOperator::symmetrized(
        dims, 0.95 * proj + 0.05 * Matrix::Identity(6, 6) / 6.0);
    const auto sigma = white_noise(dims);

    const auto decomp = osd(x, bp);
    const Matrix rho_perm = permute_to_bipartition(rho.data(), bp);
    const Matrix sig_perm = permute_to_bipartition(sigma.data(), bp);
    const int s = static_cast<int>(decomp.mu.size());
    RealVector rt(s), st(s);
    for (int i = 0; i < s; ++i) {
      const Matrix kron = Eigen::kroneckerProduct(decomp.ops_a[i], decomp.ops_b[i]);
      rt(i) = trace_product(kron, rho_perm).real();
      st(i) = trace_product(kron, sig_perm).real();
    }
    auto p_mu = [&](const RealVector& mu) {
      return (mu(0) - mu.dot(st)) / (mu.dot(rt - st));
    };
    const RealVector analytic = grad_visibility_wrt_mu(decomp, rho, sigma);
    RealVector fd(s);
    for (int j = 0; j < s; ++j) {
      RealVector up = decomp.mu, down = decomp.mu;
      up(j) += h;
      down(j) -= h;
      fd(j) = (p_mu(up) - p_mu(down)) / (2.0 * h);
    }
    worst_mu = std::max(worst_mu, (analytic - fd).norm() / analytic.norm());

    // Operator gradient on the completed larger side.
    const int n_ops = 9;
    std::vector<Matrix> ops = complete_operator_basis(decomp.ops_b, 3);
    const auto gens = so_generators(n_ops);
    auto p_eps = [&](const RealVector& eps) {
      Matrix xm = Matrix::Zero(6, 6);
      for (int i = 0; i < s; ++i) {
        Matrix moved = ops[i];
        for (std::size_t l = 0; l < gens.size(); ++l) {
          if (eps(l) == 0.0) continue;
          for (int k = 0; k < n_ops; ++k) {
            if (gens[l](i, k) != 0.0) moved += eps(l) * gens[l](i, k) * ops[k];
          }
        }
        xm += decomp.mu(i) * Eigen::kroneckerProduct(decomp.ops_a[i], moved);
      }
      const double tr_rho = trace_product(xm, rho_perm).real();
      const double tr_sig = trace_product(xm, sig_perm).real();
      return (decomp.mu(0) - tr_sig) / (tr_rho - tr_sig);
    };
    const RealVector analytic_ops = grad_visibility_wrt_ops(decomp, rho, sigma, Side::B);
    RealVector fd_ops(analytic_ops.size());
    for (int l = 0; l < analytic_ops.size(); ++l) {
      RealVector up = RealVector::Zero(analytic_ops.size());
      RealVector down = RealVector::Zero(analytic_ops.size());
      up(l) = h;
      down(l) = -h;
      fd_ops(l) = (p_eps(up) - p_eps(down)) / (2.0 * h);
    }
    worst_ops =
        std::max(worst_ops, (analytic_ops - fd_ops).norm() / analytic_ops.norm());
  }
  return worst_mu <= 1e-4 && worst_ops <= 1e-4;
}

bool prop_coefficient_sum_inequality() {
  std::uint64_t seed = 80000;
  int checked = 0;
  for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {3, 3}}) {
    const Bipartition bp(dims, {0});
    const auto& perm = bipartition_permutation(bp);
    for (int t = 0; t < 167 && checked < 500; ++t, ++checked) {
      const auto x = random_hermitian(dims, seed++);
      const Vector psi = random_pure(dims[0] * dims[1], seed++);
      const double mu1 = osd(x, bp).mu(0);
      if (mu1 < 1e-12) continue;
      const double overlap = (psi.adjoint() * x.data() * psi)(0, 0).real();
      Matrix reshaped(dims[0], dims[1]);
      for (long i = 0; i < psi.size(); ++i) {
        reshaped(perm[i] / dims[1], perm[i] % dims[1]) = psi(i);
      }
      Eigen::JacobiSVD<Matrix> svd(reshaped);
      const double sum = svd.singularValues().sum();
      if (sum * sum < overlap / mu1 - 1e-9) return false;
    }
  }
  return checked == 500;
}

bool prop_measure_soundness() {
  std::uint64_t seed = 90000;
  const std::vector<std::pair<std::string, PureMeasure>> measures = {
      {"CREN", PureMeasure::Cren},
      {"Concurrence", PureMeasure::Concurrence},
      {"GConcurrence", PureMeasure::GConcurrence},
      {"GeometricMeasure", PureMeasure::GeometricMeasure}};
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 3}}) {
    const Bipartition bp(dims, {0});
    for (int t = 0; t < 100; ++t) {
      const Vector psi = random_pure(dims[0] * dims[1], seed++);
      const auto rho = projector(dims, psi);
      const auto report = bipartite_bounds(rho, rho, bp);
      for (const auto& [name, measure] : measures) {
        if (report.bounds.at(name) > pure_state_oracle(psi, bp, measure) + 1e-9) return false;
      }
    }
  }
  return true;
}

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Item {
    const char* name;
    bool (*run)();
  };
  const Item items[] = {
      {"osd reconstruction/orthonormality/Parseval", prop_osd_invariants},
      {"product-state nonnegativity", prop_product_nonnegativity},
      {"gradients vs finite differences", prop_gradients_vs_finite_differences},
      {"coefficient-sum inequality", prop_coefficient_sum_inequality},
      {"measure-bound soundness", prop_measure_soundness},
  };
  bool pass = true;
  std::string detail;
  for (const auto& item : items) {
    const bool ok = item.run();
    pass = pass && ok;
    detail += std::string(item.name) + (ok ? " ok" : " FAILED") + ", ";
  }
  const double wall = seconds_since(t0);
  pass = pass && wall < 900.0;
  report(7, pass, detail + fmt(wall) + " s");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2_and_4();
  criterion_3();
  criterion_5();
  criterion_6();
  criterion_7();
  std::printf("acceptance: %s (%0.1f s total)\n", g_failures == 0 ? "all criteria pass" : "FAILURES",
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
