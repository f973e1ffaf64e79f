#include "qpol/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpol {

std::string_view to_string(DegreeMethod method) {
  switch (method) {
    case DegreeMethod::closed_form:
      return "closed_form";
    case DegreeMethod::optimizer:
      return "optimizer";
    case DegreeMethod::rank1:
      return "rank1";
  }
  return "unknown";
}

namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void validate_diagonal(const DiagonalProbs& probs) {
  if (probs.empty()) throw std::invalid_argument("diagonal probabilities are empty");
  double total = 0.0;
  for (std::size_t N = 0; N < probs.size(); ++N) {
    if (probs[N].size() > N + 1) throw std::invalid_argument("manifold " + std::to_string(N) + " has more than N+1 weights");
    for (double p : probs[N]) {
      if (!(p >= 0.0)) throw std::invalid_argument("negative diagonal probability");
      total += p;
    }
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("unnormalized diagonal probabilities");
}

}  // namespace

DegreeReport degree_hs(const DensityMatrix& rho) {
  const auto p = photon_distribution(rho);
  double number_term = 0.0;
  for (std::size_t N = 0; N < p.probs().size(); ++N) number_term += p.probs()[N] * p.probs()[N] / static_cast<double>(N + 1);
  return {clamp_unit(purity(rho) - number_term), DegreeMethod::closed_form, hs_closest(rho), 0, 0.0};
}

DegreeReport degree_bures_pure(const PureState& psi) {
  const auto p = photon_distribution(psi);
  int best_N = 0;
  double best = -1.0;
  for (int N = 0; N <= psi.cutoff(); ++N) {
    const double overlap = p[N] / (N + 1);
    if (overlap > best + 1e-14) {
      best = overlap;
      best_N = N;
    }
  }
  return {clamp_unit(1.0 - std::sqrt(best)), DegreeMethod::rank1, UnpolarizedSpectrum::concentrated(best_N, psi.cutoff()),
          0, 0.0};
}

DegreeReport degree_bures_diagonal(const DiagonalProbs& probs) {
  validate_diagonal(probs);
  std::vector<double> s_squared(probs.size(), 0.0);
  double z = 0.0;
  for (std::size_t N = 0; N < probs.size(); ++N) {
    double s = 0.0;
    for (double p : probs[N]) s += std::sqrt(p);
    s_squared[N] = s * s;
    z += s_squared[N] / static_cast<double>(N + 1);
  }
  std::vector<double> lambdas(probs.size());
  for (std::size_t N = 0; N < probs.size(); ++N) {
    const double w = static_cast<double>(N + 1);
    lambdas[N] = s_squared[N] / (w * w * z);
  }
  const int cutoff = static_cast<int>(probs.size()) - 1;
  return {clamp_unit(1.0 - std::sqrt(z)), DegreeMethod::closed_form, UnpolarizedSpectrum(cutoff, std::move(lambdas)), 0,
          0.0};
}

DegreeReport degree_bures_general(const DensityMatrix& rho, const OptimizerSettings& settings) {
  const FidelityObjective objective(rho);
  const int cutoff = rho.cutoff();

  // Midpoint of the HS-closest spectrum and the uniform one: feasible and
  // strictly positive on every manifold that carries weight.
  const auto hs = hs_closest(rho);
  std::vector<double> start(static_cast<std::size_t>(cutoff + 1));
  for (int N = 0; N <= cutoff; ++N) start[static_cast<std::size_t>(N)] = 0.5 * hs[N] + 0.5 / ((N + 1.0) * (cutoff + 1.0));

  const auto result = maximize_root_fidelity(objective, std::move(start), settings);
  const double root_fidelity = std::min(result.objective, 1.0);
  const double value = settings.alternative_definition ? 1.0 - root_fidelity * root_fidelity : 1.0 - root_fidelity;
  return {clamp_unit(value), DegreeMethod::optimizer, UnpolarizedSpectrum(cutoff, result.lambdas), result.iterations,
          result.residual};
}

int degree_discrete(const DensityMatrix& rho, double tol) { return is_unpolarized(rho, tol) ? 0 : 1; }

DegreeBracket diagonal_bures_bounds(const DiagonalProbs& probs) {
  validate_diagonal(probs);
  double upper_sum = 0.0;
  double lower_sum = 0.0;
  for (std::size_t N = 0; N < probs.size(); ++N) {
    double pN = 0.0;
    for (double p : probs[N]) pN += p;
    upper_sum += pN / static_cast<double>(N + 1);
    lower_sum += pN;
  }
  return {std::max(0.0, 1.0 - std::sqrt(lower_sum)), 1.0 - std::sqrt(upper_sum)};
}

}  // namespace qpol
