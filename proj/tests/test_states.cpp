#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qpol/degrees.hpp"
#include "qpol/random.hpp"
#include "qpol/states.hpp"
#include "qpol/stokes.hpp"
#include "qpol/unpolarized.hpp"

using namespace qpol;

TEST_CASE("fock states") {
  const auto vac = fock_state(0, 0, 2);
  CHECK(std::abs(vac.amplitudes()(0) - 1.0) < 1e-15);
  const auto twin = fock_state(2, 1, 2);
  CHECK(std::abs(twin.amplitude({2, 1}) - 1.0) < 1e-15);
  CHECK(semiclassical_degree(twin) < 1e-15);
  CHECK(degree_hs(DensityMatrix::from_pure(fock_state(1, 1, 1))).value == doctest::Approx(0.5));
  CHECK_THROWS_AS(fock_state(3, 0, 2), std::out_of_range);
}

TEST_CASE("su2 coherent amplitudes") {
  const auto s = su2_coherent(2, std::numbers::pi / 2, 0.0, 2);
  CHECK(std::abs(s.amplitude({2, 0}) - 0.5) < 1e-15);
  CHECK(std::abs(s.amplitude({2, 1}) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s.amplitude({2, 2}) - 0.5) < 1e-15);

  random::Engine rng(81);
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi), phi(-std::numbers::pi, std::numbers::pi);
  for (int N = 0; N <= 12; ++N) {
    const double t = theta(rng), f = phi(rng);
    const auto psi = su2_coherent(N, t, f, N + 1);
    CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-12);
    CHECK(degree_hs(DensityMatrix::from_pure(psi)).value == doctest::Approx(N / (N + 1.0)).epsilon(1e-12));
    for (int k = 0; k <= N; ++k) {
      const Complex expected = std::sqrt(oracle::binomial(N, k)) * std::pow(std::sin(t / 2), N - k) *
                               std::pow(std::cos(t / 2), k) * std::polar(1.0, -k * f);
      CHECK(std::abs(psi.amplitude({N, k}) - expected) < 1e-12);
    }
  }
  CHECK_THROWS_AS(su2_coherent(2, -0.1, 0.0, 2), std::out_of_range);
}

TEST_CASE("su2 coherent poles are single basis vectors") {
  for (int N = 1; N <= 8; ++N) {
    CHECK(std::abs(su2_coherent(N, 0.0, 0.3, N).amplitude({N, N})) == doctest::Approx(1.0));
    CHECK(std::abs(su2_coherent(N, std::numbers::pi, 0.3, N).amplitude({N, 0})) == doctest::Approx(1.0));
  }
}

TEST_CASE("two-mode coherent states") {
  CoherentSpec zero;
  const auto vac = two_mode_coherent(zero);
  CHECK(vac.state.cutoff() == 0);
  CHECK(std::abs(vac.state.amplitudes()(0) - 1.0) < 1e-15);

  CoherentSpec one;
  one.mean_photons = 1.0;
  one.theta = 1.1;
  one.phi = 0.4;
  const auto coh = two_mode_coherent(one);
  CHECK(coh.tail_mass <= one.tail_tol);
  const auto p = photon_distribution(coh.state);
  for (int N = 0; N <= coh.state.cutoff(); ++N) {
    CHECK(std::abs(p[N] - oracle::poisson(1.0, N)) < 1e-12);
    CHECK(std::abs(coh.poisson_amplitudes[N] - std::sqrt(oracle::poisson(1.0, N))) < 1e-14);
  }
  CHECK(std::abs(degree_hs(DensityMatrix::from_pure(coh.state)).value - (1.0 - oracle::bessel_ratio(1.0))) < 1e-10);
}

TEST_CASE("coherent state from quadrature amplitudes") {
  const Complex ah = std::polar(0.6, -0.35), av = std::polar(0.8, 0.35);
  const auto spec = CoherentSpec::from_amplitudes(ah, av);
  CHECK(spec.mean_photons == doctest::Approx(1.0));
  CHECK(spec.theta == doctest::Approx(2.0 * std::atan2(0.6, 0.8)));
  CHECK(spec.phi == doctest::Approx(0.7));
}

TEST_CASE("poisson tail and cutoff") {
  for (double mean : {0.5, 2.0, 7.0}) {
    double direct = 0.0;
    for (int N = 6; N < 200; ++N) direct += oracle::poisson(mean, N);
    CHECK(poisson_tail(mean, 5) == doctest::Approx(direct).epsilon(1e-12));
    const int c = poisson_cutoff(mean, 1e-12, 150);
    CHECK(poisson_tail(mean, c) <= 1e-12);
    if (c > 0) CHECK(poisson_tail(mean, c - 1) > 1e-12);
  }
  CHECK_THROWS_AS(poisson_cutoff(100.0, 1e-12, 20), std::invalid_argument);
  CHECK_THROWS_AS(poisson_cutoff(1.0, 0.0, 20), std::invalid_argument);
}

TEST_CASE("truncation stability") {
  for (double mean : {0.5, 2.0, 5.0}) {
    CoherentSpec a;
    a.mean_photons = mean;
    a.theta = 0.9;
    CoherentSpec b = a;
    b.tail_tol = 1e-14;
    const double da = degree_hs(DensityMatrix::from_pure(two_mode_coherent(a).state)).value;
    const double db = degree_hs(DensityMatrix::from_pure(two_mode_coherent(b).state)).value;
    CHECK(std::abs(da - db) < 1e-10);
  }
}

TEST_CASE("diagonal mixtures") {
  const auto single = diagonal_mixture({{0.0}, {1.0, 0.0}}, {}, 1);
  CHECK((single.matrix() - DensityMatrix::from_pure(fock_state(1, 0, 1)).matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const auto uniform = diagonal_mixture({{0.0}, {0.0, 0.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}}, {}, 2);
  CHECK(is_unpolarized(uniform));

  random::Engine rng(82);
  for (int t = 0; t < 10; ++t) {
    const int cutoff = 1 + t % 3;
    const auto probs = random::diagonal_probs(cutoff, rng);
    std::vector<CMatrix> bases;
    for (int N = 0; N <= cutoff; ++N) bases.push_back(random::haar_unitary(N + 1, rng));
    const auto fock = diagonal_mixture(probs, {}, cutoff);
    const auto rotated = diagonal_mixture(probs, bases, cutoff);
    CHECK(std::abs(degree_hs(fock).value - degree_hs(rotated).value) < 1e-12);
    CHECK(std::abs(degree_bures_general(fock).value - degree_bures_general(rotated).value) < 1e-7);
    // hs_closest only sees manifold sums.
    const auto h = hs_closest(rotated);
    for (int N = 0; N <= cutoff; ++N) {
      double sum = 0.0;
      for (double p : probs[N]) sum += p;
      CHECK(h[N] == doctest::Approx(sum / (N + 1)).epsilon(1e-12));
    }
  }

  std::vector<CMatrix> bad{CMatrix::Identity(1, 1), 2.0 * CMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(diagonal_mixture({{0.5}, {0.5, 0.0}}, bad, 1), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_mixture({{0.5}, {0.4, 0.0}}, {}, 1), std::invalid_argument);
}
