#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qpol/degrees.hpp"
#include "qpol/metrics.hpp"
#include "qpol/random.hpp"
#include "qpol/states.hpp"
#include "qpol/twolevel.hpp"
#include "qpol/unpolarized.hpp"

using namespace qpol;

namespace {

TwoManifoldState make(double p, double q_squared, int N1 = 1, int N2 = 2) {
  return TwoManifoldState::with_fock_components(N1, N2, p, std::sqrt(q_squared));
}

DensityMatrix sigma_for(int N1, int N2, double l1, double l2, int cutoff) {
  std::vector<double> lambdas(static_cast<std::size_t>(cutoff + 1), 0.0);
  lambdas[N1] = l1;
  lambdas[N2] = l2;
  return to_density(UnpolarizedSpectrum(cutoff, lambdas));
}

// Best λ1 on a uniform grid of [0, 1/(N1+1)].
double grid_lambda1(const TwoManifoldState& s, double resolution) {
  const double top = 1.0 / (s.N1() + 1.0);
  const int steps = static_cast<int>(std::round(top / resolution));
  double best = -1.0, arg = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double l1 = top * i / steps;
    const double l2 = std::max(0.0, (1.0 - (s.N1() + 1.0) * l1) / (s.N2() + 1.0));
    const double f = oracle::fidelity_svd(embed(s, std::max(s.N1(), s.N2())).matrix(),
                                          sigma_for(s.N1(), s.N2(), l1, l2, std::max(s.N1(), s.N2())).matrix());
    if (f > best) best = f, arg = l1;
  }
  return arg;
}

}  // namespace

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(make(0.5, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(make(1.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make(0.5, 0.0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(TwoManifoldState(1, 2, 0.5, 0.0, fock_state(2, 0, 2), fock_state(2, 0, 2)), std::invalid_argument);

  const auto one = make(1.0, 0.0);
  CHECK((embed(one, 2).matrix() - DensityMatrix::from_pure(fock_state(1, 0, 2)).matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(two_manifold_purity(make(0.5, 0.25)) == doctest::Approx(1.0));
  CHECK(two_manifold_purity(make(0.3, 0.1)) == doctest::Approx(0.78));
  CHECK(purity(embed(make(0.3, 0.1), 3)) == doctest::Approx(0.78).epsilon(1e-12));
  CHECK(make(0.5, 0.25).is_pure());
  CHECK_FALSE(make(0.5, 0.2).is_pure());
}

TEST_CASE("chi eigenvalues") {
  const auto diag = make(0.3, 0.0);
  const auto [hi, lo] = chi_eigenvalues(diag, 0.2, 0.2);
  CHECK(hi == doctest::Approx(std::max(0.2 * 0.3, 0.2 * 0.7)));
  CHECK(lo == doctest::Approx(std::min(0.2 * 0.3, 0.2 * 0.7)));

  const auto [h2, l2] = chi_eigenvalues(make(0.5, 0.25), 0.3, 0.3);
  CHECK(h2 == doctest::Approx(0.3));
  CHECK(std::abs(l2) < 1e-15);

  random::Engine rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double p = u(rng);
    const Complex q = std::polar(std::sqrt(u(rng) * p * (1.0 - p)), 6.28 * u(rng));
    const auto s = TwoManifoldState::with_fock_components(1, 2, p, q);
    const double l1 = 0.5 * u(rng);
    const double l2 = (1.0 - 2.0 * l1) / 3.0;
    const auto [a, b] = chi_eigenvalues(s, l1, l2);
    const auto [ea, eb] = oracle::eig2(l1 * p, std::sqrt(l1 * l2) * q, l2 * (1.0 - p));
    CHECK(std::abs(a - ea) < 1e-12);
    CHECK(std::abs(b - std::max(0.0, eb)) < 1e-12);
  }
}

TEST_CASE("closed-form fidelity against the Uhlmann route") {
  CHECK(fidelity_closed(make(0.6, 0.24), 0.3, 0.1) == doctest::Approx(0.3 * 0.6 + 0.1 * 0.4));
  for (int i = 0; i < 20; ++i) {
    const double p = i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const auto s = make(p, p * (1.0 - p) * j / 19.0);
      const double l1 = 0.3;
      const double l2 = constrained_lambda2(s, l1);
      const double uhlmann = fidelity(embed(s, 2), sigma_for(1, 2, l1, l2, 2));
      CHECK(std::abs(fidelity_closed(s, l1, l2) - uhlmann) < 1e-10);
      CHECK(std::abs(fidelity_closed(s, l1, l2) - oracle::fidelity_svd(embed(s, 2).matrix(), sigma_for(1, 2, l1, l2, 2).matrix())) < 1e-10);
    }
  }
}

TEST_CASE("fidelity is monotone in the coherence") {
  for (double p : {0.1, 0.4, 0.8})
    for (double l1 : {0.1, 0.25, 0.4}) {
      double previous = -1.0;
      for (int j = 0; j <= 20; ++j) {
        const auto s = make(p, p * (1.0 - p) * j / 20.0);
        const double f = fidelity_closed(s, l1, constrained_lambda2(s, l1));
        if (previous >= 0.0) CHECK(f <= previous + 1e-15);
        previous = f;
      }
    }
}

TEST_CASE("optimal spectrum for pure states") {
  const auto [a1, a2] = optimal_spectrum(make(0.9, 0.09));
  CHECK(a1 == doctest::Approx(0.5));
  CHECK(a2 == doctest::Approx(0.0));
  CHECK(fidelity_closed(make(0.9, 0.09), a1, a2) == doctest::Approx(0.45));

  const auto low = make(0.2, 0.16);
  const auto [b1, b2] = optimal_spectrum(low);
  CHECK(b1 == 0.0);
  CHECK(b2 == doctest::Approx(1.0 / 3.0));
  CHECK(fidelity_closed(low, b1, b2) == doctest::Approx(0.8 / 3.0));

  // Threshold (1+N1)/(2+N1+N2) = 2/5.
  const auto tie = make(0.4, 0.24);
  CHECK(optimal_spectrum(tie).first == 0.0);
}

TEST_CASE("optimal spectrum for mixed states") {
  const auto s = make(0.3, 0.1);
  const auto [l1, l2] = optimal_spectrum(s);
  CHECK(2.0 * l1 + 3.0 * l2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(stationarity_residual(s, l1)) <= 1e-9);
  CHECK(std::abs(l1 - grid_lambda1(s, 1e-5)) < 1e-4);
  CHECK_THROWS_AS(stationarity_residual(s, 0.0), std::domain_error);

  random::Engine rng(72);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int t = 0; t < 40; ++t) {
    const double p = u(rng);
    const auto m = make(p, u(rng) * p * (1.0 - p));
    const auto [m1, m2] = optimal_spectrum(m);
    CHECK(2.0 * m1 + 3.0 * m2 == doctest::Approx(1.0).epsilon(1e-14));
    if (m1 > 1e-9 && m1 < 0.5 - 1e-9) CHECK(std::abs(stationarity_residual(m, m1)) <= 1e-9);
    // No feasible λ1 does better.
    const double best = fidelity_closed(m, m1, m2);
    for (int i = 0; i <= 200; ++i) {
      const double l = 0.5 * i / 200;
      CHECK(fidelity_closed(m, l, constrained_lambda2(m, l)) <= best + 1e-14);
    }
  }
}

TEST_CASE("other manifold pairs") {
  random::Engine rng(73);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const int pairs[][2] = {{0, 1}, {0, 3}, {2, 1}, {1, 4}};
  for (const auto& pr : pairs) {
    for (int t = 0; t < 3; ++t) {
      const double p = u(rng);
      const auto s = make(p, u(rng) * p * (1.0 - p), pr[0], pr[1]);
      const int cutoff = std::max(pr[0], pr[1]);
      CHECK(std::abs(degree_pair(s).bures - degree_bures_general(embed(s, cutoff)).value) < 1e-6);
      CHECK(std::abs(degree_pair(s).hs - degree_hs(embed(s, cutoff)).value) < 1e-12);
    }
  }
}

TEST_CASE("degree pairs for the two marker states") {
  const auto a = degree_pair(TwoManifoldState::pure(1, 2, 0.9));
  const auto b = degree_pair(TwoManifoldState::diagonal(1, 2, 4.0 / 7.0));
  CHECK(std::abs(a.hs - (0.81 + 0.01 + 0.18 - 0.81 / 2 - 0.01 / 3)) < 1e-12);
  CHECK(std::abs(a.bures - (1.0 - std::sqrt(0.45))) < 1e-12);
  CHECK(std::abs(b.hs - 2.0 / 7.0) < 1e-12);
  CHECK(std::abs(b.bures - (1.0 - std::sqrt(3.0 / 7.0))) < 1e-12);
  CHECK(a.bures < b.bures);
  CHECK(a.hs > b.hs);
}

TEST_CASE("endpoints reduce to single-manifold degrees") {
  for (int N1 = 0; N1 <= 3; ++N1)
    for (int N2 = 0; N2 <= 3; ++N2) {
      if (N1 == N2) continue;
      for (bool pure : {true, false}) {
        const auto at1 = degree_pair(pure ? TwoManifoldState::pure(N1, N2, 1.0) : TwoManifoldState::diagonal(N1, N2, 1.0));
        const auto at0 = degree_pair(pure ? TwoManifoldState::pure(N1, N2, 0.0) : TwoManifoldState::diagonal(N1, N2, 0.0));
        CHECK(at1.hs == doctest::Approx(N1 / (N1 + 1.0)));
        CHECK(at1.bures == doctest::Approx(1.0 - 1.0 / std::sqrt(N1 + 1.0)));
        CHECK(at0.hs == doctest::Approx(N2 / (N2 + 1.0)));
        CHECK(at0.bures == doctest::Approx(1.0 - 1.0 / std::sqrt(N2 + 1.0)));
      }
    }
}

TEST_CASE("figure sweep") {
  const auto rows = figure1_sweep(1, 2, 101);
  REQUIRE(rows.size() == 204);
  int pure = 0, diagonal = 0;
  for (std::size_t i = 0; i < 202; ++i) {
    pure += rows[i].label == "pure";
    diagonal += rows[i].label == "diagonal";
  }
  CHECK(pure == 101);
  CHECK(diagonal == 101);
  CHECK(rows[202].label == "marker_A");
  CHECK(rows[203].label == "marker_B");
  CHECK(rows[203].bures == doctest::Approx(1.0 - std::sqrt(3.0 / 7.0)).epsilon(1e-12));

  for (std::size_t i = 0; i + 1 < 202; i += 2) {
    // Sorted by p, "diagonal" before "pure".
    REQUIRE(rows[i].p == rows[i + 1].p);
    CHECK(rows[i].label == "diagonal");
    CHECK(rows[i + 1].bures >= rows[i].bures - 1e-12);
    CHECK(rows[i + 1].hs >= rows[i].hs - 1e-12);
  }
  CHECK(figure1_sweep(0, 3, 5).size() == 10);
  CHECK_THROWS_AS(figure1_sweep(1, 2, 1), std::invalid_argument);

  std::ostringstream a, b;
  write_figure1_csv(a, rows);
  write_figure1_csv(b, figure1_sweep(1, 2, 101));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("p,q_squared,case,P_HS,P_B,lambda1,lambda2\n", 0) == 0);
  CHECK(a.str().find('\r') == std::string::npos);
}
