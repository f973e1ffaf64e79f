#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpol/metrics.hpp"
#include "qpol/random.hpp"
#include "qpol/states.hpp"
#include "qpol/stokes.hpp"
#include "qpol/unpolarized.hpp"

using namespace qpol;

TEST_CASE("spectrum validation") {
  CHECK_NOTHROW(UnpolarizedSpectrum(1, {0.0, 0.5}));
  CHECK_THROWS_AS(UnpolarizedSpectrum(1, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(UnpolarizedSpectrum(1, {1.2, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(UnpolarizedSpectrum(2, {1.0}), std::invalid_argument);
  CHECK(weighted_sum({0.2, 0.1, 0.2}) == doctest::Approx(1.0));
}

TEST_CASE("to_density examples") {
  const auto vac = to_density(UnpolarizedSpectrum(2, {1.0, 0.0, 0.0}));
  CHECK(std::abs(vac.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(vac.matrix().cwiseAbs().sum() == doctest::Approx(1.0));

  const auto half = to_density(UnpolarizedSpectrum(1, {0.0, 0.5}));
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  CHECK((half.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spectrum purity") {
  CHECK(spectrum_purity(UnpolarizedSpectrum()) == doctest::Approx(1.0));
  CHECK(spectrum_purity(UnpolarizedSpectrum(1, {0.0, 0.5})) == doctest::Approx(0.5));

  std::vector<double> lambdas;
  for (int N = 0; N <= 20; ++N) lambdas.push_back(oracle::poisson(1.0, N) / (N + 1));
  const double mass = weighted_sum(lambdas);
  for (auto& l : lambdas) l /= mass;
  const UnpolarizedSpectrum spec(20, lambdas);
  CHECK(std::abs(spectrum_purity(spec) - oracle::bessel_ratio(1.0)) < 1e-10);

  random::Engine rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto s = random::spectrum(4, rng);
    CHECK(spectrum_purity(s) == doctest::Approx(purity(to_density(s))).epsilon(1e-13));
  }
}

TEST_CASE("membership") {
  random::Engine rng(22);
  for (int t = 0; t < 20; ++t) CHECK(is_unpolarized(to_density(random::spectrum(3, rng))));
  CHECK_FALSE(is_unpolarized(DensityMatrix::from_pure(fock_state(1, 1, 1))));
  CHECK(is_unpolarized(DensityMatrix::from_pure(fock_state(0, 0, 3))));

  // Off-diagonal Hermitian perturbation at ten times the tolerance.
  const double tol = 1e-9;
  const auto sigma = to_density(UnpolarizedSpectrum(2, {0.25, 0.15, 0.15}));
  CMatrix m = sigma.matrix();
  m(1, 4) += 10 * tol;
  m(4, 1) += 10 * tol;
  CHECK_FALSE(is_unpolarized(DensityMatrix(2, m), tol));
  // And a tenth of it stays inside.
  CMatrix small = sigma.matrix();
  small(1, 4) += tol / 10;
  small(4, 1) += tol / 10;
  CHECK(is_unpolarized(DensityMatrix(2, small), tol));
}

TEST_CASE("hs_closest examples") {
  for (int N = 0; N <= 6; ++N) {
    const auto spec = hs_closest(DensityMatrix::from_pure(fock_state(N, N / 2, 6)));
    for (int M = 0; M <= 6; ++M) CHECK(spec[M] == doctest::Approx(M == N ? 1.0 / (N + 1) : 0.0));
  }
  const auto vac = hs_closest(DensityMatrix::from_pure(fock_state(0, 0, 2)));
  CHECK(vac[0] == 1.0);
}

TEST_CASE("hs_closest satisfies the spectrum invariants") {
  random::Engine rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto spec = hs_closest(random::density(1 + t % 4, rng));
    CHECK(std::abs(weighted_sum(spec.lambdas()) - 1.0) < 1e-14);
    for (double l : spec.lambdas()) CHECK(l >= 0.0);
  }
}

TEST_CASE("hs_closest agrees with a grid search at cutoff 2") {
  random::Engine rng(24);
  const int steps = 300;
  for (int t = 0; t < 5; ++t) {
    const auto rho = random::density(2, rng);
    double best = 1e300;
    std::vector<double> arg;
    // λ0 + 2 λ1 + 3 λ2 = 1
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; i + j <= steps; ++j) {
        const double l1 = 0.5 * j / steps;
        const double l2 = (1.0 - static_cast<double>(i) / steps - static_cast<double>(j) / steps) / 3.0;
        const std::vector<double> l{static_cast<double>(i) / steps, l1, l2};
        const double d = oracle::hs_to_spectrum(rho.matrix(), l);
        if (d < best) best = d, arg = l;
      }
    const auto spec = hs_closest(rho);
    const double closed = oracle::hs_to_spectrum(rho.matrix(), spec.lambdas());
    CHECK(closed <= best + 1e-14);
    CHECK(best - closed < 1e-4);
    for (int N = 0; N < 3; ++N) CHECK(std::abs(arg[N] - spec[N]) < 2.0 / steps);
  }
}

TEST_CASE("hs_closest minimality against random spectra") {
  random::Engine rng(25);
  for (int t = 0; t < 100; ++t) {
    const int cutoff = 1 + t % 3;
    const auto rho = random::density(cutoff, rng, 1 + t % 3);
    const double closest = hs_distance(rho, to_density(hs_closest(rho)));
    for (int s = 0; s < 50; ++s) CHECK(closest <= hs_distance(rho, to_density(random::spectrum(cutoff, rng))) + 1e-14);
  }
}

TEST_CASE("membership is invariant under energy-preserving unitaries") {
  random::Engine rng(26);
  for (int t = 0; t < 20; ++t) {
    const auto sigma = to_density(random::spectrum(3, rng));
    const CMatrix U = random::block_unitary(3, rng);
    CHECK(is_unpolarized(apply_unitary(sigma, U)));
    const auto rho = random::density(3, rng);
    CHECK_FALSE(is_unpolarized(apply_unitary(rho, U)));
  }
}
