#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oswit/schmidt_number.hpp"
#include "oswit/states.hpp"

using namespace oswit;

namespace {

RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

RealVector random_mu(std::mt19937_64& gen, int length) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RealVector mu(length);
  for (int i = 0; i < length; ++i) mu(i) = unif(gen);
  std::sort(mu.data(), mu.data() + length, std::greater<double>());
  return mu;
}

}  // namespace

TEST_CASE("lambda_k closed forms") {
  CHECK(lambda_k(vec({1, 1, 1, 1}), 3).lambda == doctest::Approx(2.0));
  CHECK(lambda_k(vec({0.5, 0.3, 0.2, 0.1}), 3).lambda ==
        doctest::Approx(0.5 * (0.6 + std::sqrt(0.41))));
  CHECK(lambda_k(vec({0.9, 0.5}), 2).lambda == doctest::Approx(0.9));
  // Unit coefficients give k - 1 for k = 4 as well.
  CHECK(lambda_k(RealVector::Ones(9), 4).lambda == doctest::Approx(3.0));

  CHECK(lambda_k(vec({0.7}), 3).method == LambdaMethod::ClosedForm3);
  CHECK(lambda_k(vec({0.7}), 4).method == LambdaMethod::EigenMatrices4);

  CHECK_THROWS_AS(lambda_k(vec({0.5, 0.9}), 3), std::invalid_argument);
  CHECK_THROWS_AS(lambda_k(vec({1, 1, 1, 1}), 5), std::invalid_argument);
  CHECK_THROWS_AS(lambda_k(vec({1, 1}), 1), std::invalid_argument);
}

TEST_CASE("brute force matches the trivial cases") {
  CHECK(lambda_k_bruteforce(vec({1, 1, 1, 1}), 3, 1e-3) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(lambda_k_bruteforce(vec({0.63, 0.2}), 2, 1e-2) == doctest::Approx(0.63));
  CHECK(lambda_k_bruteforce(vec({0.5, 0.3, 0.2, 0.1}), 3, 1e-3) ==
        doctest::Approx(lambda_k(vec({0.5, 0.3, 0.2, 0.1}), 3).lambda).epsilon(1e-3));
  CHECK_THROWS_AS(lambda_k_bruteforce(vec({1}), 3, 0.5), std::invalid_argument);
}

TEST_CASE("closed form agrees with brute force on random vectors") {
  std::mt19937_64 gen(41);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const RealVector mu = random_mu(gen, 6);
    const double closed = lambda_k(mu, 3).lambda;
    const double brute = lambda_k_bruteforce(mu, 3, 1e-3);
    CHECK(brute <= closed + 1e-9);  // grid search approaches from below
    worst = std::max(worst, std::abs(closed - brute));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("lambda_k never exceeds the leading coefficient sum") {
  std::mt19937_64 gen(53);
  for (int t = 0; t < 200; ++t) {
    const RealVector mu = random_mu(gen, 9);
    CHECK(lambda_k(mu, 3).lambda <= mu.head(4).sum() + 1e-9);
    CHECK(lambda_k(mu, 4).lambda <= mu.head(9).sum() + 1e-9);
  }
}

TEST_CASE("lambda_4 dominates lambda_3 and matches brute force") {
  std::mt19937_64 gen(43);
  for (int t = 0; t < 200; ++t) {
    const RealVector mu = random_mu(gen, 9);
    const double l3 = lambda_k(mu, 3).lambda;
    const double l4 = lambda_k(mu, 4).lambda;
    CHECK(l4 >= l3 - 1e-12);
    if (t < 25) {
      CHECK(lambda_k_bruteforce(mu, 4, 2e-2) == doctest::Approx(l4).epsilon(2e-3));
    }
  }
}

TEST_CASE("the maximizer respects the ordering constraint") {
  std::mt19937_64 gen(47);
  for (int t = 0; t < 500; ++t) {
    const RealVector mu = random_mu(gen, 4);
    // Eigenvector route: the top eigenvector of the symmetrized coefficient
    // matrix carries the Schmidt vector.
    RealMatrix m(2, 2);
    m << mu(0), 0.5 * (mu(1) + mu(2)), 0.5 * (mu(1) + mu(2)), mu(3);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
    RealVector top = es.eigenvectors().col(1);
    if (top(0) < 0) top = -top;
    CHECK(top(0) >= top(1) - 1e-6);
    // Brute-force route.
    const auto detail = lambda_k_bruteforce_detail(mu, 3, 1e-2);
    REQUIRE(detail.maximizer.size() == 2);
    CHECK(detail.maximizer(0) >= detail.maximizer(1) - 1e-6);
  }
}

TEST_CASE("sn witness with k=2 equals the plain witness") {
  const auto bell = make_state("bell");
  const Bipartition bp(bell.dims, {0});
  const auto w2 = sn_witness(bell.density, bp, 2);
  const auto wo = osd_witness(bell.density, bp);
  CHECK(std::abs(w2.offset - wo.offset) < 1e-12);
  CHECK(w2.kind == WitnessKind::SchmidtNumber);
  CHECK(w2.schmidt_k == 2);
}

TEST_CASE("rho3 Schmidt-number witness") {
  const auto r3 = make_state("rho3");
  const Bipartition bp(r3.dims, {0});
  const auto x = schmidt_operator_observable(r3.density, bp);
  const auto w = sn_witness(x, bp, 3);
  CHECK(w.offset == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(evaluate(w, r3.density) < 0.0);
}

TEST_CASE("psi3 separates the witness from the extended CCNR check") {
  const auto p3 = make_state("psi3:eps=0.1");
  const Bipartition bp(p3.dims, {0});
  CHECK_FALSE(extended_ccnr_sn_check(p3.density, bp, 3));
  CHECK(extended_ccnr_sn_check(p3.density, bp, 2));  // entangled

  const auto w = sn_witness(p3.density, bp, 3);
  CHECK(w.offset == doctest::Approx(0.99).epsilon(2e-3));
  CHECK(evaluate(w, p3.density) < 0.0);

  // The maximally entangled qutrit pair has coefficient sum 3.
  const auto bell3 = make_state("bell3");
  CHECK(extended_ccnr_sn_check(bell3.density, Bipartition(bell3.dims, {0}), 3));

  CHECK_FALSE(extended_ccnr_sn_check(
      HermitianOperator({2, 2}, Matrix::Identity(4, 4) / 4.0), Bipartition({2, 2}, {0}), 2));
}
