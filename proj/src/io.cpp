#include "oswit/io.hpp"

#include <fstream>
#include <ostream>

namespace oswit {

using nlohmann::json;

json operator_to_json(const HermitianOperator& op) {
  const int d = op.dim();
  std::vector<std::vector<double>> re(d, std::vector<double>(d));
  std::vector<std::vector<double>> im(d, std::vector<double>(d));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      re[r][c] = op.data()(r, c).real();
      im[r][c] = op.data()(r, c).imag();
    }
  }
  json j;
  j["dims"] = op.dims();
  j["re"] = re;
  j["im"] = im;
  if (!op.label().empty()) j["label"] = op.label();
  return j;
}

HermitianOperator operator_from_json(const json& j) {
  const auto dims = j.at("dims").get<std::vector<int>>();
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  const std::size_t d = re.size();
  if (im.size() != d) throw std::invalid_argument("re and im parts have different sizes");
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (re[r].size() != d || im[r].size() != d) {
      throw std::invalid_argument("matrix rows must all have the full length");
    }
    for (std::size_t c = 0; c < d; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return HermitianOperator(dims, std::move(m), j.value("label", ""));
}

void write_operator(const std::filesystem::path& path, const HermitianOperator& op) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << operator_to_json(op).dump(2) << '\n';
}

HermitianOperator read_operator(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return operator_from_json(j);
}

json witness_to_json(const Witness& w) {
  json j;
  j["kind"] = to_string(w.kind);
  if (w.kind == WitnessKind::SchmidtNumber) j["k"] = w.schmidt_k;
  j["offset"] = w.offset;
  j["observable"] = operator_to_json(w.observable);
  json per;
  for (const auto& [label, mu1] : w.certificate.mu1_per_bipartition) per[label] = mu1;
  j["certificate"] = {{"per_bipartition_mu1", per},
                      {"critical", w.certificate.critical_alpha}};
  return j;
}

json report_to_json(const MeasureBoundReport& r) {
  json j;
  j["S"] = r.S;
  j["m"] = r.m;
  j["context"] = r.context == MeasureContext::Bipartite ? "bipartite" : "gme";
  j["bounds"] = r.bounds;
  return j;
}

void write_trace_csv(std::ostream& os, const OptimizationTrace& trace) {
  os << "iter,p_crit,mu1,step_kind,critical_bipartition\n";
  os.precision(17);
  for (const auto& row : trace.iterations) {
    os << row.index << ',';
    if (std::isfinite(row.p_crit)) {
      os << row.p_crit;
    } else {
      os << "inf";
    }
    os << ',' << row.mu1 << ',' << row.step_kind << ',' << row.critical_bipartition << '\n';
  }
}

json config_to_json(const OptimizerConfig& c) {
  return json{{"step_size", c.step_size},
              {"max_iters", c.max_iters},
              {"convergence_tol", c.convergence_tol},
              {"convergence_window", c.convergence_window},
              {"perturbation_eps", c.perturbation_eps},
              {"seed", c.seed},
              {"schedule", to_string(c.schedule)}};
}

OptimizerConfig config_from_json(const json& j) {
  OptimizerConfig c;
  c.step_size = j.value("step_size", c.step_size);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.convergence_tol = j.value("convergence_tol", c.convergence_tol);
  c.convergence_window = j.value("convergence_window", c.convergence_window);
  c.perturbation_eps = j.value("perturbation_eps", c.perturbation_eps);
  c.seed = j.value("seed", c.seed);
  if (j.contains("schedule")) c.schedule = schedule_from_string(j.at("schedule"));
  return c;
}

}  // namespace oswit
