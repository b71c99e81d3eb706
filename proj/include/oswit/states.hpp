#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oswit/operator.hpp"

namespace oswit {

struct NamedState {
  std::string name;
  std::vector<int> dims;
  std::optional<Vector> pure;  // set for pure states
  HermitianOperator density;   // projector for pure states
};

/// Deterministic constructors for the named states. Accepted names:
///   ghzN, wN, dickeN-K, h3, singlet4, cluster4, comb, upb, rho3,
///   psi3[:eps=0.1], bell[D] (maximally entangled pair of dimension D).
/// Qubit ordering is big-endian: the leftmost ket symbol is party 0.
NamedState make_state(const std::string& name);

std::vector<std::string> known_state_names();

/// Haar-random local factors, deterministic per seed.
Vector random_pure_product(const std::vector<int>& dims, std::uint64_t seed);

/// Haar-random pure state on a single space.
Vector random_pure(int dim, std::uint64_t seed);

/// Normalized Wishart matrix A A^dagger / Tr, deterministic per seed.
HermitianOperator random_density(const std::vector<int>& dims, std::uint64_t seed);
inline HermitianOperator random_density(int dim, std::uint64_t seed) {
  return random_density(std::vector<int>{dim}, seed);
}

/// Gaussian entries, symmetrized.
HermitianOperator random_hermitian(const std::vector<int>& dims, std::uint64_t seed);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase fixing).
Matrix random_unitary(int dim, std::uint64_t seed);

}  // namespace oswit
