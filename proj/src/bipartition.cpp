#include "oswit/bipartition.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace oswit {

Bipartition::Bipartition(std::vector<int> dims, std::vector<int> alpha)
    : dims_(std::move(dims)) {
  const int n = static_cast<int>(dims_.size());
  if (n < 2) throw std::invalid_argument("bipartition needs at least two parties");
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("party dimensions must be positive");
  }
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  for (int p : alpha) {
    if (p < 0 || p >= n) throw std::invalid_argument("bipartition party index out of range");
  }
  if (alpha.empty() || static_cast<int>(alpha.size()) == n) {
    throw std::invalid_argument("bipartition sides must both be nonempty");
  }
  // Canonical form: alpha contains party 0.
  if (alpha.front() != 0) {
    std::vector<int> complement;
    std::vector<bool> in(n, false);
    for (int p : alpha) in[p] = true;
    for (int p = 0; p < n; ++p) {
      if (!in[p]) complement.push_back(p);
    }
    alpha.swap(complement);
  }
  alpha_ = std::move(alpha);
  std::vector<bool> in(n, false);
  for (int p : alpha_) in[p] = true;
  for (int p = 0; p < n; ++p) {
    if (!in[p]) alpha_bar_.push_back(p);
  }
  for (int p : alpha_) dim_alpha_ *= dims_[p];
  for (int p : alpha_bar_) dim_alpha_bar_ *= dims_[p];
}

std::string Bipartition::label() const {
  std::ostringstream os;
  for (int p : alpha_) os << p;
  os << '|';
  for (int p : alpha_bar_) os << p;
  return os.str();
}

std::vector<Bipartition> enumerate_bipartitions(const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  if (n < 2) throw std::invalid_argument("need at least two parties");
  std::vector<Bipartition> out;
  const unsigned full = 1u << (n - 1);
  for (unsigned mask = 0; mask + 1 < full; ++mask) {
    std::vector<int> alpha{0};
    for (int p = 1; p < n; ++p) {
      if (mask & (1u << (p - 1))) alpha.push_back(p);
    }
    out.emplace_back(dims, std::move(alpha));
  }
  return out;
}

Bipartition parse_bipartition(const std::vector<int>& dims, const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    throw std::invalid_argument("bipartition label must contain '|', e.g. 0|12");
  }
  std::vector<int> alpha;
  for (char c : text.substr(0, bar)) {
    if (std::isdigit(static_cast<unsigned char>(c))) alpha.push_back(c - '0');
  }
  std::vector<int> beta;
  for (char c : text.substr(bar + 1)) {
    if (std::isdigit(static_cast<unsigned char>(c))) beta.push_back(c - '0');
  }
  if (alpha.empty() || beta.empty()) {
    throw std::invalid_argument("both bipartition sides need party indices");
  }
  std::vector<int> all = alpha;
  all.insert(all.end(), beta.begin(), beta.end());
  std::sort(all.begin(), all.end());
  if (all.size() != dims.size()) {
    throw std::invalid_argument("bipartition label must mention every party exactly once");
  }
  for (int p = 0; p < static_cast<int>(dims.size()); ++p) {
    if (all[p] != p) {
      throw std::invalid_argument("bipartition label must mention every party exactly once");
    }
  }
  return Bipartition(dims, alpha);
}

}  // namespace oswit
