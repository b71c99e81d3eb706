// Command-line front end: operator Schmidt decompositions, witness
// construction and optimization, entanglement-measure bounds, and the
// benchmark reproduction suites. Outputs are JSON/CSV; every run writes a
// manifest. Exit codes: 0 success, 1 usage error, 2 numerical failure,
// 3 reproduction-suite mismatch.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oswit/io.hpp"
#include "oswit/measures.hpp"
#include "oswit/repro.hpp"
#include "oswit/schmidt_number.hpp"
#include "oswit/states.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oswit;

namespace {

struct GlobalOptions {
  bool json_output = false;
  std::string outdir = ".";
  std::uint64_t seed = 0x5EED;
  bool seed_given = false;
};

std::uint64_t resolve_seed(const GlobalOptions& g) {
  if (const char* env = std::getenv("OSWIT_SEED")) {
    return std::stoull(env);
  }
  return g.seed;
}

HermitianOperator load_state_or_file(const std::string& state, const std::string& file,
                                     std::optional<NamedState>* named = nullptr) {
  if (!state.empty() && !file.empty()) {
    throw std::invalid_argument("give either a state name or a file, not both");
  }
  if (!file.empty()) return read_operator(file);
  if (state.empty()) throw std::invalid_argument("a state name or file is required");
  NamedState s = make_state(state);
  if (named) *named = s;
  return s.density;
}

HermitianOperator white_noise(const std::vector<int>& dims) {
  HermitianOperator id = HermitianOperator::identity(dims);
  return HermitianOperator(dims, id.data() / static_cast<double>(id.dim()), "white-noise");
}

void write_manifest(const GlobalOptions& g, const std::string& command, const json& parameters,
                    const std::vector<std::string>& outputs, double wall_seconds) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["seed"] = resolve_seed(g);
  m["library_version"] = kLibraryVersion;
  m["wall_time_s"] = wall_seconds;
  m["outputs"] = outputs;
  fs::create_directories(g.outdir);
  std::ofstream out(fs::path(g.outdir) / "manifest.json");
  out << m.dump(2) << '\n';
}

json decompose_one(const HermitianOperator& op, const Bipartition& bp, bool is_state,
                   const OsdOptions& opts) {
  const auto decomp = osd(op, bp, opts);
  json j;
  j["bipartition"] = bp.label();
  j["mu"] = std::vector<double>(decomp.mu.data(), decomp.mu.data() + decomp.mu.size());
  j["mu1"] = decomp.mu.size() > 0 ? decomp.mu(0) : 0.0;
  j["osc_sum"] = decomp.mu.sum();
  j["effective_rank"] = decomp.effective_rank();
  if (is_state) j["ccnr_value"] = decomp.mu.sum();
  return j;
}

int cmd_decompose(const GlobalOptions& g, const std::string& state, const std::string& file,
                  const std::string& bipartition, double perturb) {
  const auto t0 = std::chrono::steady_clock::now();
  const HermitianOperator op = load_state_or_file(state, file);
  const bool is_state = is_density_matrix(op);

  OsdOptions opts;
  if (perturb > 0.0) {
    opts.break_symmetry = true;
    opts.perturbation = perturb;
    opts.seed = resolve_seed(g);
  }

  json out;
  out["dims"] = op.dims();
  out["is_state"] = is_state;
  if (!bipartition.empty()) {
    out.update(decompose_one(op, parse_bipartition(op.dims(), bipartition), is_state, opts));
  } else if (op.num_parties() == 2) {
    out.update(decompose_one(op, enumerate_bipartitions(op.dims()).front(), is_state, opts));
  } else {
    json items = json::array();
    double best = -1.0;
    std::string critical;
    for (const auto& bp : enumerate_bipartitions(op.dims())) {
      json j = decompose_one(op, bp, is_state, opts);
      if (j["mu1"].get<double>() > best) {
        best = j["mu1"].get<double>();
        critical = bp.label();
      }
      items.push_back(std::move(j));
    }
    out["bipartitions"] = std::move(items);
    out["critical"] = critical;
    out["gme_offset"] = best;
  }

  std::cout << out.dump(2) << '\n';
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json params{{"state", state}, {"file", file}, {"bipartition", bipartition}, {"perturb", perturb}};
  write_manifest(g, "decompose", params, {}, wall);
  return 0;
}

int cmd_optimize(const GlobalOptions& g, const std::string& state, const std::string& state_file,
                 const std::string& noise, const std::string& start, OptimizerConfig config) {
  const auto t0 = std::chrono::steady_clock::now();
  const HermitianOperator rho = load_state_or_file(state, state_file);
  const auto& dims = rho.dims();

  HermitianOperator sigma =
      noise.empty() || noise == "white" ? white_noise(dims) : read_operator(noise);

  config.seed = resolve_seed(g);
  HermitianOperator x0 = rho;
  if (start == "random") {
    x0 = random_density(dims, config.seed + 1);
  } else if (!start.empty() && start != "target") {
    x0 = read_operator(start);
  }

  const OptimizationTrace trace =
      rho.num_parties() >= 3 ? optimize_multipartite(x0, rho, sigma, config)
                             : optimize_bipartite(x0, rho, sigma, config);

  fs::create_directories(g.outdir);
  const fs::path trace_path = fs::path(g.outdir) / "trace.csv";
  const fs::path witness_path = fs::path(g.outdir) / "witness.json";
  {
    std::ofstream out(trace_path);
    write_trace_csv(out, trace);
  }
  {
    std::ofstream out(witness_path);
    out << witness_to_json(trace.final_witness).dump(2) << '\n';
  }

  json summary;
  summary["initial_p_crit"] = trace.initial_p_crit;
  summary["final_p_crit"] = trace.final_p_crit;
  summary["iterations"] = trace.iterations.empty() ? 0 : trace.iterations.back().index;
  summary["phase1_iterations"] = trace.phase1_iterations;
  summary["critical_bipartition"] = trace.final_witness.certificate.critical_label;
  summary["offset"] = trace.final_witness.offset;
  summary["improved"] = trace.final_p_crit < trace.initial_p_crit - 1e-9;
  if (g.json_output) {
    std::cout << summary.dump(2) << '\n';
  } else {
    std::cout << "initial p_crit: " << trace.initial_p_crit << '\n'
              << "final p_crit:   " << trace.final_p_crit << '\n';
    if (!summary["improved"].get<bool>()) {
      std::cout << "no improvement over the initial witness\n";
    }
    std::cout << "trace:   " << trace_path.string() << '\n'
              << "witness: " << witness_path.string() << '\n';
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json params{{"state", state},
              {"noise", noise.empty() ? "white" : noise},
              {"start", start.empty() ? "target" : start},
              {"config", config_to_json(config)}};
  write_manifest(g, "optimize", params, {trace_path.string(), witness_path.string()}, wall);
  return 0;
}

int cmd_bounds(const GlobalOptions& g, const std::string& state, const std::string& state_file,
               const std::string& observable_file, const std::string& bipartition, bool gme) {
  const auto t0 = std::chrono::steady_clock::now();
  const HermitianOperator rho = load_state_or_file(state, state_file);
  const HermitianOperator x = observable_file.empty() ? rho : read_operator(observable_file);

  MeasureBoundReport report;
  if (gme) {
    report = gme_bounds(rho, x);
  } else {
    const Bipartition bp = bipartition.empty()
                               ? enumerate_bipartitions(rho.dims()).front()
                               : parse_bipartition(rho.dims(), bipartition);
    report = bipartite_bounds(rho, x, bp);
  }
  std::cout << report_to_json(report).dump(2) << '\n';

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json params{{"state", state},
              {"observable", observable_file},
              {"bipartition", bipartition},
              {"gme", gme}};
  write_manifest(g, "bounds", params, {}, wall);
  return 0;
}

int cmd_reproduce(const GlobalOptions& g, const std::string& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = repro::run_suite(suite);
  bool all_pass = true;
  json items = json::array();
  for (const auto& r : rows) {
    all_pass = all_pass && r.pass;
    items.push_back({{"name", r.name},
                     {"reference", r.reference},
                     {"computed", r.computed},
                     {"tolerance", r.tolerance},
                     {"two_sided", r.two_sided},
                     {"pass", r.pass}});
    if (!g.json_output) {
      std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": computed " << r.computed
                << " vs reference " << r.reference << " (tol " << r.tolerance
                << (r.two_sided ? "" : ", upper bound") << ")\n";
    }
  }
  if (g.json_output) {
    std::cout << json{{"suite", suite}, {"pass", all_pass}, {"rows", items}}.dump(2) << '\n';
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(g, "reproduce", json{{"suite", suite}}, {}, wall);
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses from operator Schmidt decompositions"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_flag("--json", g.json_output, "machine-readable output only on stdout");
  app.add_option("--outdir", g.outdir, "directory for output files")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed (env OSWIT_SEED overrides)")
      ->capture_default_str();

  std::string state, state_file, bipartition, noise = "white", start = "target";
  std::string observable_file, suite, config_file;
  double perturb = 0.0;
  bool gme = false;
  OptimizerConfig config;

  auto* dec = app.add_subcommand("decompose", "operator Schmidt coefficients and CCNR value");
  dec->add_option("--state", state, "named state (see README)");
  dec->add_option("--file", state_file, "operator JSON file");
  dec->add_option("--bipartition", bipartition, "e.g. 0|12");
  dec->add_option("--perturb", perturb, "symmetry-breaking mixing weight");

  auto* opt = app.add_subcommand("optimize", "gradient-descent witness optimization");
  opt->add_option("--state", state, "target state name");
  opt->add_option("--state-file", state_file, "target state JSON file");
  opt->add_option("--noise", noise, "white or a JSON file")->capture_default_str();
  opt->add_option("--start", start, "target, random, or a JSON file")->capture_default_str();
  opt->add_option("--config", config_file, "optimizer config JSON");
  std::string schedule_name;
  opt->add_option("--schedule", schedule_name, "two-phase, alternating, osc-only, ops-only");
  double eps = -1.0;
  opt->add_option("--eps", eps, "gradient step size");
  int max_iters = -1;
  opt->add_option("--max-iters", max_iters, "iteration budget");
  double perturb_opt = -1.0;
  opt->add_option("--perturb", perturb_opt, "input perturbation weight");

  auto* bnd = app.add_subcommand("bounds", "lower bounds on entanglement monotones");
  bnd->add_option("--state", state, "state name");
  bnd->add_option("--state-file", state_file, "state JSON file");
  bnd->add_option("--observable-file", observable_file, "witness observable JSON file");
  bnd->add_option("--bipartition", bipartition, "e.g. 0|1");
  bnd->add_flag("--gme", gme, "genuine multipartite bounds");

  auto* rep = app.add_subcommand("reproduce", "benchmark suites with reference values");
  rep->add_option("--suite", suite, "table1, appendixA, appendixC3, measures")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (dec->parsed()) return cmd_decompose(g, state, state_file, bipartition, perturb);
    if (opt->parsed()) {
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw std::invalid_argument("cannot open config file " + config_file);
        json j;
        in >> j;
        config = config_from_json(j);
      }
      if (!schedule_name.empty()) config.schedule = schedule_from_string(schedule_name);
      if (eps > 0.0) config.step_size = eps;
      if (max_iters >= 0) config.max_iters = max_iters;
      if (perturb_opt >= 0.0) config.perturbation_eps = perturb_opt;
      return cmd_optimize(g, state, state_file, noise, start, config);
    }
    if (bnd->parsed()) return cmd_bounds(g, state, state_file, observable_file, bipartition, gme);
    if (rep->parsed()) return cmd_reproduce(g, suite);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
