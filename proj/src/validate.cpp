// Oracle cross-checks run by `qpol validate`. Each check compares a library
// routine with an independent route (grid search, closed form, direct
// eigensolver, finite differences, or a symmetry the result must respect).

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpol/cli.hpp"
#include "qpol/degrees.hpp"
#include "qpol/linalg.hpp"
#include "qpol/metrics.hpp"
#include "qpol/random.hpp"
#include "qpol/states.hpp"
#include "qpol/stokes.hpp"
#include "qpol/twolevel.hpp"

namespace qpol::cli {

namespace {

using random::Engine;

struct Check {
  std::string name;
  std::function<std::string(Engine&)> run;  // empty string = pass
};

std::string describe(const char* what, double got, double bound) {
  std::ostringstream s;
  s.precision(6);
  s << what << ": " << got << " exceeds " << bound;
  return s.str();
}

std::string check_commutators(Engine&) {
  for (int cutoff = 0; cutoff <= 4; ++cutoff) {
    const CMatrix& s0 = stokes_matrix(StokesOp::S0, cutoff);
    const CMatrix& s1 = stokes_matrix(StokesOp::S1, cutoff);
    const CMatrix& s2 = stokes_matrix(StokesOp::S2, cutoff);
    const CMatrix& s3 = stokes_matrix(StokesOp::S3, cutoff);
    const Complex two_i(0.0, 2.0);
    const double err = std::max({max_abs(s1 * s2 - s2 * s1 - two_i * s3), max_abs(s2 * s3 - s3 * s2 - two_i * s1),
                                 max_abs(s3 * s1 - s1 * s3 - two_i * s2), max_abs(s0 * s1 - s1 * s0),
                                 max_abs(s0 * s2 - s2 * s0), max_abs(s0 * s3 - s3 * s0)});
    if (err > 1e-12) return describe("commutator residual", err, 1e-12);
  }
  return {};
}

std::string check_uncertainty(Engine& rng) {
  for (int i = 0; i < 50; ++i) {
    const auto rho = random::density(1 + i % 4, rng, 1 + i % 3);
    const auto m = stokes_moments(rho);
    if (m.variance_sum < 2.0 * m.s0 - 1e-9) return describe("uncertainty violation", 2.0 * m.s0 - m.variance_sum, 1e-9);
    if (m.svec.norm() > m.s0 + 1e-9) return describe("|<S>| - <S0>", m.svec.norm() - m.s0, 1e-9);
  }
  return {};
}

std::string check_hs_minimality(Engine& rng, const ValidationHooks& hooks) {
  for (int i = 0; i < 30; ++i) {
    const auto rho = random::density(1 + i % 3, rng);
    const double best = hs_distance(rho, to_density(hooks.hs_closest(rho)));
    for (int j = 0; j < 50; ++j) {
      const double other = hs_distance(rho, to_density(random::spectrum(rho.cutoff(), rng)));
      if (other < best - 1e-14) return describe("random spectrum beats HS-closest by", best - other, 1e-14);
    }
    const double degree = degree_hs(rho).value;
    if (std::abs(degree - best) > 1e-12) return describe("P_HS vs minimal HS distance", std::abs(degree - best), 1e-12);
  }
  return {};
}

std::string check_hs_grid(Engine& rng, const ValidationHooks& hooks) {
  // Brute-force minimization over the λ-simplex at cutoff 2.
  const int cutoff = 2;
  const int steps = 400;
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random::density(cutoff, rng);
    double best = INFINITY;
    std::vector<double> arg;
    for (int a = 0; a <= steps; ++a)
      for (int b = 0; a + b <= steps; ++b) {
        const double mu0 = static_cast<double>(a) / steps;
        const double mu1 = static_cast<double>(b) / steps;
        const std::vector<double> lambdas{mu0, mu1 / 2.0, (1.0 - mu0 - mu1) / 3.0};
        const double d = hs_distance(rho, to_density(UnpolarizedSpectrum(cutoff, lambdas)));
        if (d < best) {
          best = d;
          arg = lambdas;
        }
      }
    const auto closed = hooks.hs_closest(rho);
    for (int N = 0; N <= cutoff; ++N) {
      const double gap = std::abs(closed[N] - arg[static_cast<std::size_t>(N)]);
      if (gap > 1.0 / steps) return describe("HS-closest vs grid argmin", gap, 1.0 / steps);
    }
  }
  return {};
}

std::string check_uhlmann_closed_form(Engine&) {
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double p = (i + 0.5) / 20.0;
      const double q2 = p * (1.0 - p) * j / 19.0;
      const auto state = TwoManifoldState::with_fock_components(1, 2, p, std::sqrt(q2));
      const double l1 = 0.3;
      const double l2 = constrained_lambda2(state, l1);
      const std::vector<double> lambdas{0.0, l1, l2};
      const double uhlmann = fidelity(embed(state, 2), to_density(UnpolarizedSpectrum(2, lambdas)));
      const double gap = std::abs(uhlmann - fidelity_closed(state, l1, l2));
      if (gap > 1e-10) return describe("Uhlmann vs closed-form fidelity", gap, 1e-10);
    }
  return {};
}

std::string check_rank1_fidelity(Engine& rng) {
  for (int i = 0; i < 30; ++i) {
    const auto psi = random::pure_state(2, rng);
    const auto sigma = random::density(2, rng);
    const double direct = (psi.amplitudes().adjoint() * sigma.matrix() * psi.amplitudes())(0, 0).real();
    const double gap = std::abs(fidelity(DensityMatrix::from_pure(psi), sigma) - direct);
    if (gap > 1e-10) return describe("rank-1 fidelity reduction", gap, 1e-10);
  }
  return {};
}

std::string check_bures_pure(Engine& rng, const OptimizerSettings& settings) {
  for (int i = 0; i < 10; ++i) {
    const auto psi = random::pure_state(1 + i % 3, rng);
    const double gap = std::abs(degree_bures_general(DensityMatrix::from_pure(psi), settings).value -
                                degree_bures_pure(psi).value);
    if (gap > 1e-7) return describe("optimizer vs rank-1 closed form", gap, 1e-7);
  }
  return {};
}

std::string check_bures_diagonal(Engine& rng, const OptimizerSettings& settings) {
  for (int i = 0; i < 10; ++i) {
    const int cutoff = 1 + i % 4;
    const auto probs = random::diagonal_probs(cutoff, rng);
    std::vector<CMatrix> bases;
    for (int N = 0; N <= cutoff; ++N) bases.push_back(random::haar_unitary(N + 1, rng));
    const auto rho = diagonal_mixture(probs, bases, cutoff);
    const double closed = degree_bures_diagonal(probs).value;
    const double gap = std::abs(degree_bures_general(rho, settings).value - closed);
    if (gap > 1e-7) return describe("optimizer vs diagonal closed form", gap, 1e-7);
    const auto bracket = diagonal_bures_bounds(probs);
    if (closed > bracket.upper + 1e-12 || closed < bracket.lower - 1e-12) return "diagonal degree outside its bounds";
  }
  return {};
}

std::string check_bures_two_manifold(Engine& rng, const OptimizerSettings& settings) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double p = unit(rng);
    const double q2 = p * (1.0 - p) * unit(rng);
    const auto state = TwoManifoldState::with_fock_components(1, 2, p, std::sqrt(q2));
    const double gap = std::abs(degree_bures_general(embed(state, 2), settings).value - degree_pair(state).bures);
    if (gap > 1e-6) return describe("optimizer vs two-manifold closed form", gap, 1e-6);
  }
  return {};
}

std::string check_optimizer_certificate(Engine& rng, const OptimizerSettings& settings) {
  for (int i = 0; i < 10; ++i) {
    const auto rho = random::density(1 + i % 3, rng, 1 + i % 4);
    const FidelityObjective objective(rho);
    const auto report = degree_bures_general(rho, settings);
    const double best = objective.value(report.optimal_spectrum.lambdas());
    for (int j = 0; j < 1000; ++j) {
      const double other = objective.value(random::spectrum(rho.cutoff(), rng).lambdas());
      if (other > best + 1e-12) return describe("random spectrum beats optimizer by", other - best, 1e-12);
    }
  }
  return {};
}

std::string check_gradient(Engine& rng, const OptimizerSettings& settings) {
  for (int i = 0; i < 10; ++i) {
    const auto rho = random::density(2, rng);
    const FidelityObjective objective(rho);
    const auto lambdas = random::spectrum(2, rng).lambdas();
    const auto analytic = objective.gradient(lambdas);
    const auto numeric = objective.gradient_fd(lambdas, settings.fd_step);
    for (std::size_t N = 0; N < analytic.size(); ++N) {
      const double gap = std::abs(analytic[N] - numeric[N]) / std::max(1.0, std::abs(analytic[N]));
      if (gap > 1e-5) return describe("analytic vs finite-difference gradient", gap, 1e-5);
    }
  }
  return {};
}

std::string check_energy_invariance(Engine& rng, const OptimizerSettings& settings) {
  for (int i = 0; i < 10; ++i) {
    const auto rho = random::density(1 + i % 3, rng);
    const double hs = degree_hs(rho).value;
    const double bures = degree_bures_general(rho, settings).value;
    const auto moved = apply_unitary(rho, random::block_unitary(rho.cutoff(), rng));
    const double dh = std::abs(degree_hs(moved).value - hs);
    const double db = std::abs(degree_bures_general(moved, settings).value - bures);
    if (dh > 1e-8) return describe("P_HS change under energy-preserving unitary", dh, 1e-8);
    if (db > 1e-8) return describe("P_B change under energy-preserving unitary", db, 1e-8);
  }
  return {};
}

std::string check_semiclassical_invariance(Engine& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random::density(3, rng);
    Eigen::Vector3d axis(normal(rng), normal(rng), normal(rng));
    axis.normalize();
    const auto moved = apply_unitary(rho, polarization_unitary(axis, angle(rng), angle(rng), 3));
    const double gap = std::abs(semiclassical_degree(moved) - semiclassical_degree(rho));
    if (gap > 1e-10) return describe("semiclassical degree change under SU(2)", gap, 1e-10);
  }
  return {};
}

std::string check_ordering_reversal(Engine&) {
  const auto a = degree_pair(TwoManifoldState::pure(1, 2, 0.9));
  const auto b = degree_pair(TwoManifoldState::diagonal(1, 2, 4.0 / 7.0));
  if (!(a.bures < b.bures && a.hs > b.hs)) return "states A and B are ordered the same way by both degrees";
  return {};
}

std::string check_coherent_bessel(Engine&) {
  // e^{-2x} I1(2x) / x by its power series, independent of the state machinery.
  for (double nbar : {0.5, 1.0, 2.0, 5.0}) {
    double series = 0.0;
    double term = nbar;  // m = 0 term of Σ x^{2m+1} / (m! (m+1)!)
    for (int m = 0; m < 200; ++m) {
      series += term;
      term *= nbar * nbar / ((m + 1.0) * (m + 2.0));
    }
    const double expected = 1.0 - std::exp(-2.0 * nbar) * series / nbar;
    CoherentSpec spec;
    spec.mean_photons = nbar;
    const auto state = two_mode_coherent(spec);
    const double gap = std::abs(degree_hs(DensityMatrix::from_pure(state.state)).value - expected);
    if (gap > 1e-10) return describe("coherent P_HS vs Bessel series", gap, 1e-10);
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& config, const ValidationHooks& hooks_in) {
  ValidationHooks hooks = hooks_in;
  if (!hooks.hs_closest) hooks.hs_closest = [](const DensityMatrix& rho) { return hs_closest(rho); };
  const OptimizerSettings settings = config.optimizer;

  const std::vector<Check> checks{
      {"stokes_commutators", check_commutators},
      {"stokes_uncertainty_relation", check_uncertainty},
      {"hs_closest_minimality", [&](Engine& r) { return check_hs_minimality(r, hooks); }},
      {"hs_closest_grid_search", [&](Engine& r) { return check_hs_grid(r, hooks); }},
      {"uhlmann_vs_two_manifold_fidelity", check_uhlmann_closed_form},
      {"rank1_fidelity_reduction", check_rank1_fidelity},
      {"bures_optimizer_vs_pure_closed_form", [&](Engine& r) { return check_bures_pure(r, settings); }},
      {"bures_optimizer_vs_diagonal_closed_form", [&](Engine& r) { return check_bures_diagonal(r, settings); }},
      {"bures_optimizer_vs_two_manifold_closed_form", [&](Engine& r) { return check_bures_two_manifold(r, settings); }},
      {"bures_optimizer_certificate", [&](Engine& r) { return check_optimizer_certificate(r, settings); }},
      {"fidelity_gradient_vs_finite_differences", [&](Engine& r) { return check_gradient(r, settings); }},
      {"energy_preserving_invariance", [&](Engine& r) { return check_energy_invariance(r, settings); }},
      {"semiclassical_su2_invariance", check_semiclassical_invariance},
      {"two_manifold_ordering_reversal", check_ordering_reversal},
      {"coherent_hs_vs_bessel_series", check_coherent_bessel},
  };

  std::vector<CheckResult> results;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    // Each check gets its own stream so results do not depend on check order.
    Engine rng(config.seed + 7919 * i);
    std::string detail;
    try {
      detail = checks[i].run(rng);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    results.push_back({checks[i].name, detail.empty(), detail});
  }
  return results;
}

}  // namespace qpol::cli
