#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oswit/osd.hpp"

namespace oswit {

enum class WitnessKind { Fidelity, Osd, SchmidtNumber, Gme };

std::string to_string(WitnessKind kind);

/// Leading Schmidt coefficient per bipartition, in canonical enumeration
/// order, plus the argmax (the critical bipartition).
struct WitnessCertificate {
  std::vector<std::pair<std::string, double>> mu1_per_bipartition;
  std::vector<int> critical_alpha;
  std::string critical_label;
};

/// W = offset * identity - observable. A negative expectation value certifies
/// the property the kind encodes (entanglement, Schmidt number >= k, GME).
struct Witness {
  WitnessKind kind = WitnessKind::Osd;
  int schmidt_k = 0;  // set for SchmidtNumber witnesses
  double offset = 0.0;
  HermitianOperator observable;
  WitnessCertificate certificate;

  Matrix matrix() const;
};

/// offset = largest squared Schmidt coefficient of psi over all bipartitions.
Witness fidelity_witness(const Vector& psi, const std::vector<int>& dims);

/// offset = mu_1 of osd(x, bp).
Witness osd_witness(const HermitianOperator& x, const Bipartition& bp);

/// Sum of the operator Schmidt coefficients of a state; > 1 certifies
/// entanglement.
double ccnr_value(const HermitianOperator& rho, const Bipartition& bp);

/// X = sum_i G_i^A (x) G_i^B over the effective-rank Schmidt operators of rho.
HermitianOperator schmidt_operator_observable(const HermitianOperator& rho,
                                              const Bipartition& bp);

/// Witness built from rho's Schmidt operators with all coefficients set to
/// one; Tr(W rho) = 1 - ccnr_value(rho) when the operator family is full. The
/// offset is recomputed from the resulting observable, so rank-deficient
/// states still give valid witnesses.
Witness ccnr_witness(const HermitianOperator& rho, const Bipartition& bp);

/// offset = max over all bipartitions of mu_1; the certificate records every
/// mu_1 and the critical bipartition. Two-party input degrades to osd_witness.
Witness gme_witness(const HermitianOperator& x);

/// offset * Tr(rho) - Tr(X rho).
double evaluate(const Witness& w, const HermitianOperator& rho);

/// Critical visibility p = Tr(W sigma) / (Tr(W sigma) - Tr(W rho)), or
/// nullopt when the witness does not detect rho (Tr(W rho) >= 0).
std::optional<double> visibility(const Witness& w, const HermitianOperator& rho,
                                 const HermitianOperator& sigma);

}  // namespace oswit
