#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oswit/measures.hpp"
#include "oswit/states.hpp"

using namespace oswit;

namespace {

HermitianOperator white_noise(const std::vector<int>& dims) {
  HermitianOperator id = HermitianOperator::identity(dims);
  return HermitianOperator(dims, id.data() / static_cast<double>(id.dim()));
}

}  // namespace

TEST_CASE("s value") {
  const auto bell = make_state("bell");
  CHECK(s_value(bell.density, bell.density, 0.5) == doctest::Approx(2.0));

  const auto sigma = white_noise({2, 2});
  CHECK(s_value(sigma, bell.density, 0.5) == doctest::Approx(1.0));  // clamp

  const auto bell3 = make_state("bell3");
  CHECK(s_value(bell3.density, bell3.density, 1.0 / 3.0) == doctest::Approx(3.0));

  CHECK_THROWS_AS(s_value(bell.density, bell.density, 0.0), std::invalid_argument);
}

TEST_CASE("bipartite bounds on the Bell state") {
  const auto bell = make_state("bell");
  const Bipartition bp(bell.dims, {0});
  const auto r = bipartite_bounds(bell.density, bell.density, bp);
  CHECK(r.S == doctest::Approx(2.0));
  CHECK(r.m == 2);
  CHECK(r.bounds.at("CREN") == doctest::Approx(0.5));
  CHECK(r.bounds.at("Concurrence") == doctest::Approx(1.0));
  CHECK(r.bounds.at("GConcurrence") == doctest::Approx(1.0));
  CHECK(r.bounds.at("GeometricMeasure") == doctest::Approx(0.5));
  // The concurrence bound is tight on the maximally entangled state.
  CHECK(r.bounds.at("Concurrence") ==
        doctest::Approx(pure_state_oracle(*bell.pure, bp, PureMeasure::Concurrence)));
}

TEST_CASE("bipartite bounds on the qutrit pair are tight for the concurrence") {
  const auto bell3 = make_state("bell3");
  const Bipartition bp(bell3.dims, {0});
  const auto r = bipartite_bounds(bell3.density, bell3.density, bp);
  CHECK(r.S == doctest::Approx(3.0));
  const double oracle = pure_state_oracle(*bell3.pure, bp, PureMeasure::Concurrence);
  CHECK(oracle == doctest::Approx(std::sqrt(2.0 * (1.0 - 1.0 / 3.0))));
  CHECK(r.bounds.at("Concurrence") == doctest::Approx(oracle));
}

TEST_CASE("clamped inputs sit at the zero points") {
  const auto bell = make_state("bell");
  const Bipartition bp(bell.dims, {0});
  const auto r = bipartite_bounds(white_noise({2, 2}), bell.density, bp);
  CHECK(r.S == doctest::Approx(1.0));
  CHECK(r.bounds.at("CREN") == doctest::Approx(0.0));
  CHECK(r.bounds.at("Concurrence") == doctest::Approx(0.0));
  CHECK(r.bounds.at("GConcurrence") == doctest::Approx(2.0 - r.m));
  CHECK(r.bounds.at("GeometricMeasure") == doctest::Approx(0.0));
}

TEST_CASE("gme bounds") {
  const auto ghz = make_state("ghz3");
  const auto rg = gme_bounds(ghz.density, ghz.density);
  CHECK(rg.S == doctest::Approx(2.0));
  CHECK(rg.m == 2);
  CHECK(rg.bounds.at("Concurrence") == doctest::Approx(1.0));

  const auto w3 = make_state("w3");
  const auto rw = gme_bounds(w3.density, w3.density);
  CHECK(rw.S == doctest::Approx(1.5));
  CHECK(rw.bounds.at("Concurrence") == doctest::Approx(0.5));
  double min_oracle = std::numeric_limits<double>::infinity();
  for (const auto& bp : enumerate_bipartitions(w3.dims)) {
    min_oracle = std::min(min_oracle, pure_state_oracle(*w3.pure, bp, PureMeasure::Concurrence));
  }
  CHECK(min_oracle == doctest::Approx(std::sqrt(8.0 / 9.0)));
  CHECK(rw.bounds.at("Concurrence") <= min_oracle + 1e-9);

  const auto rmix = gme_bounds(white_noise({2, 2, 2}), ghz.density);
  CHECK(rmix.S == doctest::Approx(1.0));
  CHECK(rmix.bounds.at("CREN") == doctest::Approx(0.0));

  CHECK_THROWS_AS(gme_bounds(make_state("bell").density, make_state("bell").density),
                  std::invalid_argument);
}

TEST_CASE("pure state oracle") {
  const auto bell = make_state("bell");
  const Bipartition bp(bell.dims, {0});
  CHECK(pure_state_oracle(*bell.pure, bp, PureMeasure::Concurrence) == doctest::Approx(1.0));

  Vector skew = Vector::Zero(4);
  skew(0) = std::sqrt(0.8);
  skew(3) = std::sqrt(0.2);
  CHECK(pure_state_oracle(skew, bp, PureMeasure::Concurrence) == doctest::Approx(0.8));

  Vector prod = Vector::Zero(4);
  prod(0) = 1.0;
  for (const auto m : {PureMeasure::Cren, PureMeasure::Concurrence, PureMeasure::GConcurrence,
                       PureMeasure::GeometricMeasure}) {
    CHECK(pure_state_oracle(prod, bp, m) == doctest::Approx(0.0));
  }

  Vector unnormalized = Vector::Ones(4);
  CHECK_THROWS_AS(pure_state_oracle(unnormalized, bp, PureMeasure::Concurrence),
                  std::invalid_argument);
}

TEST_CASE("sum-of-coefficients inequality for random operators and states") {
  std::uint64_t seed = 6000;
  int checked = 0;
  for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {3, 3}}) {
    const Bipartition bp(dims, {0});
    const int d = dims[0] * dims[1];
    for (int t = 0; t < 167 && checked < 500; ++t, ++checked) {
      const auto x = random_hermitian(dims, seed++);
      const Vector psi = random_pure(d, seed++);
      const auto decomp = osd(x, bp);
      const double mu1 = decomp.mu(0);
      if (mu1 < 1e-12) continue;
      const double overlap = (psi.adjoint() * x.data() * psi)(0, 0).real();
      const RealVector s = [&] {
        Matrix reshaped(dims[0], dims[1]);
        const auto& perm = bipartition_permutation(bp);
        for (long i = 0; i < psi.size(); ++i) {
          reshaped(perm[i] / dims[1], perm[i] % dims[1]) = psi(i);
        }
        Eigen::JacobiSVD<Matrix> svd(reshaped);
        return svd.singularValues();
      }();
      const double sum = s.sum();
      CHECK(sum * sum >= overlap / mu1 - 1e-9);
    }
  }
  CHECK(checked == 500);
}

TEST_CASE("bounds never exceed the pure-state values") {
  std::uint64_t seed = 6600;
  const std::vector<std::pair<std::string, PureMeasure>> measures = {
      {"CREN", PureMeasure::Cren},
      {"Concurrence", PureMeasure::Concurrence},
      {"GConcurrence", PureMeasure::GConcurrence},
      {"GeometricMeasure", PureMeasure::GeometricMeasure}};
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 3}}) {
    const Bipartition bp(dims, {0});
    const int d = dims[0] * dims[1];
    for (int t = 0; t < 100; ++t) {
      const Vector psi = random_pure(d, seed++);
      const auto rho = projector(dims, psi);
      const auto report = bipartite_bounds(rho, rho, bp);
      for (const auto& [name, measure] : measures) {
        CHECK(report.bounds.at(name) <= pure_state_oracle(psi, bp, measure) + 1e-9);
      }
    }
  }
}

TEST_CASE("rank-one observables reduce to the fidelity-based bounds") {
  std::uint64_t seed = 7300;
  const std::vector<int> dims{3, 3};
  const Bipartition bp(dims, {0});
  for (int t = 0; t < 25; ++t) {
    const Vector phi = random_pure(9, seed++);
    const auto x = projector(dims, phi);
    const auto rho = random_density(dims, seed++);
    const auto report = bipartite_bounds(rho, x, bp);

    // Independent route: fidelity and the largest squared Schmidt coefficient.
    Matrix reshaped(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) reshaped(i, k) = phi(i * 3 + k);
    }
    Eigen::JacobiSVD<Matrix> svd(reshaped);
    const double s1sq = svd.singularValues()(0) * svd.singularValues()(0);
    const double fidelity = (phi.adjoint() * rho.data() * phi)(0, 0).real();
    const double s_fid = std::max(fidelity / s1sq, 1.0);
    CHECK(report.S == doctest::Approx(s_fid).epsilon(1e-9));
    CHECK(report.bounds.at("CREN") == doctest::Approx(0.5 * (s_fid - 1.0)).epsilon(1e-9));
    CHECK(report.bounds.at("Concurrence") ==
          doctest::Approx(std::sqrt(2.0 / 6.0) * (s_fid - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("gme concurrence bound is sound on random three-qubit states") {
  std::uint64_t seed = 8000;
  const std::vector<int> dims{2, 2, 2};
  for (int t = 0; t < 100; ++t) {
    const Vector psi = random_pure(8, seed++);
    const auto rho = projector(dims, psi);
    const auto report = gme_bounds(rho, rho);
    double min_oracle = std::numeric_limits<double>::infinity();
    for (const auto& bp : enumerate_bipartitions(dims)) {
      min_oracle = std::min(min_oracle, pure_state_oracle(psi, bp, PureMeasure::Concurrence));
    }
    CHECK(report.bounds.at("Concurrence") <= min_oracle + 1e-9);
  }
}

TEST_CASE("main-text dimension variant is exposed behind a flag") {
  const auto ghz = make_state("ghz3");
  const auto a = gme_bounds(ghz.density, ghz.density, false);
  const auto b = gme_bounds(ghz.density, ghz.density, true);
  CHECK(a.m == 2);  // max over bipartitions of the smaller side
  CHECK(b.m == 2);  // largest party dimension; identical for qubits
}
