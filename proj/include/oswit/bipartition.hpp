#pragma once

#include <string>
#include <vector>

#include "oswit/types.hpp"

namespace oswit {

/// One unordered split alpha | alpha_bar of the party set. Canonical form:
/// alpha contains party 0 (the constructor complements the given set if it
/// does not), and for operator Schmidt decompositions the "A" side is alpha.
class Bipartition {
 public:
  Bipartition(std::vector<int> dims, std::vector<int> alpha);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<int>& alpha() const { return alpha_; }
  const std::vector<int>& alpha_bar() const { return alpha_bar_; }
  int num_parties() const { return static_cast<int>(dims_.size()); }
  int dim_alpha() const { return dim_alpha_; }         // m
  int dim_alpha_bar() const { return dim_alpha_bar_; }  // n
  int dim_total() const { return dim_alpha_ * dim_alpha_bar_; }

  std::string label() const;  // e.g. "0|12"

  bool operator==(const Bipartition& other) const {
    return dims_ == other.dims_ && alpha_ == other.alpha_;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> alpha_;
  std::vector<int> alpha_bar_;
  int dim_alpha_ = 1;
  int dim_alpha_bar_ = 1;
};

/// All 2^(n-1) - 1 canonical bipartitions, ordered by the bitmask of parties
/// 1..n-1 joined to party 0. The position in this list is the canonical index.
std::vector<Bipartition> enumerate_bipartitions(const std::vector<int>& dims);

/// Parses "0|12" style labels (party indices, '|' between the sides).
Bipartition parse_bipartition(const std::vector<int>& dims, const std::string& text);

}  // namespace oswit
