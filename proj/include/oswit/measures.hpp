#pragma once

#include <map>
#include <string>

#include "oswit/witness.hpp"

namespace oswit {

enum class MeasureContext { Bipartite, Gme };
enum class PureMeasure { Cren, Concurrence, GConcurrence, GeometricMeasure };

/// Witness-based lower bounds on entanglement monotones. S is the clamp value
/// max{Tr(rho X)/offset, 1}; m the dimension parameter of the bound formulas.
struct MeasureBoundReport {
  double S = 1.0;
  int m = 2;
  MeasureContext context = MeasureContext::Bipartite;
  std::map<std::string, double> bounds;  // CREN, Concurrence, GConcurrence, GeometricMeasure
};

/// max{Tr(rho X)/offset, 1}; offset must be positive.
double s_value(const HermitianOperator& rho, const HermitianOperator& x, double offset);

/// Bipartite bounds with offset = mu_1 of osd(x, bp) and m the smaller local
/// dimension:
///   CREN       >= (S-1)/2
///   Concurrence>= sqrt(2/(m(m-1))) (S-1)
///   GConcurrence >= S+1-m
///   Geometric  >= 1 - [sqrt(S) + sqrt((m-1)(m-S))]^2 / m^2
MeasureBoundReport bipartite_bounds(const HermitianOperator& rho,
                                    const HermitianOperator& x, const Bipartition& bp);

/// Same formulas with GME parameters: offset = max-over-bipartitions mu_1 and
/// m = max over bipartitions of the smaller side dimension. `party_dim_m`
/// switches to the coarser variant m = largest single-party dimension.
MeasureBoundReport gme_bounds(const HermitianOperator& rho, const HermitianOperator& x,
                              bool party_dim_m = false);

/// Exact pure-state value from the Schmidt vector s of psi across bp:
///   CREN = ((sum_i s_i)^2 - 1)/2, Concurrence = sqrt(2 (1 - sum_i s_i^4)),
///   GConcurrence = m (prod_i s_i^2)^(1/m), Geometric = 1 - s_1^2.
double pure_state_oracle(const Vector& psi, const Bipartition& bp, PureMeasure measure);

}  // namespace oswit
