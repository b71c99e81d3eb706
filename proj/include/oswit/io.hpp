#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "oswit/measures.hpp"
#include "oswit/optimizer.hpp"
#include "oswit/witness.hpp"

namespace oswit {

/// Matrix file format shared by all tools:
/// {"dims": [..], "re": [[..]], "im": [[..]]}, row-major, exact decimal floats.
nlohmann::json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const nlohmann::json& j);
void write_operator(const std::filesystem::path& path, const HermitianOperator& op);
HermitianOperator read_operator(const std::filesystem::path& path);

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json report_to_json(const MeasureBoundReport& r);

/// Columns: iter, p_crit, mu1, step_kind, critical_bipartition. Non-detecting
/// rows carry p_crit = inf.
void write_trace_csv(std::ostream& os, const OptimizationTrace& trace);

nlohmann::json config_to_json(const OptimizerConfig& c);
OptimizerConfig config_from_json(const nlohmann::json& j);

}  // namespace oswit
