#include "qpol/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qpol/linalg.hpp"

namespace qpol {

namespace {

double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

double log_poisson(double mean, int N) {
  if (mean == 0.0) return N == 0 ? 0.0 : -INFINITY;
  return -mean + N * std::log(mean) - std::lgamma(N + 1.0);
}

}  // namespace

PureState fock_state(int N, int k, int cutoff) {
  CVector amps = CVector::Zero(dimension(cutoff));
  amps[basis_index({N, k}, cutoff)] = 1.0;
  return PureState(cutoff, std::move(amps));
}

PureState su2_coherent(int N, double theta, double phi, int cutoff) {
  if (N < 0 || N > cutoff) throw std::out_of_range("manifold index exceeds cutoff");
  if (theta < 0.0 || theta > M_PI) throw std::out_of_range("theta must lie in [0, pi]");
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  CVector amps = CVector::Zero(dimension(cutoff));
  for (int k = 0; k <= N; ++k) {
    const double magnitude = std::sqrt(std::exp(log_binomial(N, k))) * std::pow(s, N - k) * std::pow(c, k);
    amps[manifold_offset(N) + k] = std::polar(magnitude, -k * phi);
  }
  return PureState(cutoff, std::move(amps));
}

CoherentSpec CoherentSpec::from_amplitudes(Complex alpha_h, Complex alpha_v, double tail_tol) {
  CoherentSpec spec;
  spec.mean_photons = std::norm(alpha_h) + std::norm(alpha_v);
  spec.theta = 2.0 * std::atan2(std::abs(alpha_h), std::abs(alpha_v));
  spec.phi = (alpha_h == 0.0 || alpha_v == 0.0) ? 0.0 : std::arg(alpha_v) - std::arg(alpha_h);
  spec.tail_tol = tail_tol;
  return spec;
}

double poisson_tail(double mean_photons, int cutoff) {
  double tail = 0.0;
  for (int N = cutoff + 1;; ++N) {
    const double term = std::exp(log_poisson(mean_photons, N));
    tail += term;
    // Terms decay geometrically once N exceeds the mean.
    if (N > mean_photons && term <= 1e-30 * std::max(tail, 1e-300)) break;
    if (term == 0.0 && N > mean_photons) break;
  }
  return tail;
}

int poisson_cutoff(double mean_photons, double tail_tol, int max_cutoff) {
  if (!(mean_photons >= 0.0)) throw std::invalid_argument("mean photon number must be nonnegative");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
  for (int cutoff = 0; cutoff <= max_cutoff; ++cutoff)
    if (poisson_tail(mean_photons, cutoff) <= tail_tol) return cutoff;
  throw std::invalid_argument("mean photon number too large for max cutoff " + std::to_string(max_cutoff));
}

CoherentState two_mode_coherent(const CoherentSpec& spec) {
  const int cutoff = poisson_cutoff(spec.mean_photons, spec.tail_tol, spec.max_cutoff);
  std::vector<double> poisson(static_cast<std::size_t>(cutoff + 1));
  CVector amps = CVector::Zero(dimension(cutoff));
  for (int N = 0; N <= cutoff; ++N) {
    poisson[static_cast<std::size_t>(N)] = std::exp(0.5 * log_poisson(spec.mean_photons, N));
    const PureState manifold = su2_coherent(N, spec.theta, spec.phi, N);
    amps.segment(manifold_offset(N), N + 1) = poisson[static_cast<std::size_t>(N)] * manifold.amplitudes().tail(N + 1);
  }
  const double tail = poisson_tail(spec.mean_photons, cutoff);
  amps /= amps.norm();
  return {PureState(cutoff, std::move(amps)), std::move(poisson), tail};
}

DensityMatrix diagonal_mixture(const DiagonalProbs& probs, const std::vector<CMatrix>& bases, int cutoff) {
  if (probs.size() > static_cast<std::size_t>(cutoff + 1)) throw std::invalid_argument("probabilities exceed cutoff");
  if (!bases.empty() && bases.size() < probs.size()) throw std::invalid_argument("missing basis for a manifold");
  const int d = dimension(cutoff);
  CMatrix rho = CMatrix::Zero(d, d);
  double total = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const int N = static_cast<int>(n);
    if (probs[n].size() > n + 1) throw std::invalid_argument("manifold " + std::to_string(N) + " has more than N+1 weights");
    CMatrix basis = CMatrix::Identity(N + 1, N + 1);
    if (!bases.empty()) {
      basis = bases[n];
      if (basis.rows() != N + 1 || basis.cols() != N + 1) throw std::invalid_argument("basis has the wrong shape");
      if (max_abs(basis.adjoint() * basis - CMatrix::Identity(N + 1, N + 1)) > 1e-10)
        throw std::invalid_argument("basis for manifold " + std::to_string(N) + " is not orthonormal");
    }
    CMatrix weights = CMatrix::Zero(N + 1, N + 1);
    for (std::size_t k = 0; k < probs[n].size(); ++k) {
      if (!(probs[n][k] >= 0.0)) throw std::invalid_argument("negative diagonal probability");
      weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = probs[n][k];
      total += probs[n][k];
    }
    rho.block(manifold_offset(N), manifold_offset(N), N + 1, N + 1) = basis * weights * basis.adjoint();
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("unnormalized diagonal probabilities");
  return DensityMatrix(cutoff, std::move(rho));
}

}  // namespace qpol
