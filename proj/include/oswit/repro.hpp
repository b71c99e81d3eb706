#pragma once

#include <string>
#include <vector>

#include "oswit/optimizer.hpp"

namespace oswit::repro {

/// One benchmark check. `two_sided` rows pass when
/// |computed - reference| <= tolerance, one-sided rows when
/// computed <= reference + tolerance.
struct Row {
  std::string name;
  double reference = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool two_sided = true;
  bool pass = false;
};

Row check_two_sided(std::string name, double reference, double computed, double tol);
Row check_upper(std::string name, double reference, double computed, double tol);
Row check_bool(std::string name, bool expected, bool got);

/// Fixed per-state optimization recipe used by the benchmark suites.
struct OptimizationBenchmark {
  std::string state;
  double p_fid_reference = 0.0;   // exact fidelity-witness visibility
  double p_osd_reference = 0.0;   // reference optimized visibility
  int max_iters = 60000;
  Schedule schedule = Schedule::TwoPhase;
  // Start from a fixed-seed random density matrix instead of the target.
  // Highly symmetric targets can trap the descent in an exact cycle of
  // critical bipartitions when started from the target itself.
  bool random_start = false;
};

const std::vector<OptimizationBenchmark>& table1_benchmarks();  // W3, H3, W4, D4, Psi4
const std::vector<OptimizationBenchmark>& extra_benchmarks();   // comb, cluster4

/// Runs one benchmark; returns the trace (rows for fidelity and OSD columns
/// are derived by the suite functions).
OptimizationTrace run_benchmark(const OptimizationBenchmark& b);

std::vector<Row> suite_table1(bool include_osd_column = true);
std::vector<Row> suite_appendix_a();
std::vector<Row> suite_appendix_c3();
std::vector<Row> suite_measures();

std::vector<Row> run_suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace oswit::repro
