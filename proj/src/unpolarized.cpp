#include "qpol/unpolarized.hpp"

#include <cmath>
#include <stdexcept>

namespace qpol {

UnpolarizedSpectrum::UnpolarizedSpectrum(int cutoff, std::vector<double> lambdas, double tol)
    : cutoff_(cutoff), lambdas_(std::move(lambdas)) {
  if (cutoff_ < 0) throw std::invalid_argument("negative cutoff");
  if (lambdas_.size() != static_cast<std::size_t>(cutoff_ + 1))
    throw std::invalid_argument("spectrum length does not match cutoff");
  for (double& l : lambdas_) {
    if (!(l >= -tol)) throw std::invalid_argument("unpolarized spectrum has a negative weight");
    if (l < 0.0) l = 0.0;
  }
  if (std::abs(weighted_sum(lambdas_) - 1.0) > tol)
    throw std::invalid_argument("unpolarized spectrum violates sum (N+1) lambda_N = 1");
}

UnpolarizedSpectrum UnpolarizedSpectrum::concentrated(int N, int cutoff) {
  if (N < 0 || N > cutoff) throw std::out_of_range("manifold index exceeds cutoff");
  std::vector<double> lambdas(static_cast<std::size_t>(cutoff + 1), 0.0);
  lambdas[static_cast<std::size_t>(N)] = 1.0 / (N + 1);
  return UnpolarizedSpectrum(cutoff, std::move(lambdas));
}

double weighted_sum(const std::vector<double>& lambdas) {
  double total = 0.0;
  for (std::size_t N = 0; N < lambdas.size(); ++N) total += static_cast<double>(N + 1) * lambdas[N];
  return total;
}

DensityMatrix to_density(const UnpolarizedSpectrum& spec) {
  const int d = dimension(spec.cutoff());
  CMatrix m = CMatrix::Zero(d, d);
  for (int N = 0; N <= spec.cutoff(); ++N)
    for (int k = 0; k <= N; ++k) m(manifold_offset(N) + k, manifold_offset(N) + k) = spec[N];
  return DensityMatrix(spec.cutoff(), std::move(m));
}

double spectrum_purity(const UnpolarizedSpectrum& spec) {
  double total = 0.0;
  for (int N = 0; N <= spec.cutoff(); ++N) total += (N + 1) * spec[N] * spec[N];
  return total;
}

bool is_unpolarized(const DensityMatrix& rho, double tol) {
  const CMatrix& m = rho.matrix();
  const int d = rho.dimension();
  for (int i = 0; i < d; ++i) {
    const int Ni = basis_label(i, rho.cutoff()).N;
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      // Covers both off-block entries and within-block off-diagonals.
      if (std::abs(m(i, j)) > tol) return false;
    }
    const double first = m(manifold_offset(Ni), manifold_offset(Ni)).real();
    if (std::abs(m(i, i).real() - first) > tol) return false;
  }
  return true;
}

UnpolarizedSpectrum hs_closest(const DensityMatrix& rho) {
  const auto p = photon_distribution(rho);
  std::vector<double> lambdas(p.probs().size());
  for (std::size_t N = 0; N < lambdas.size(); ++N) lambdas[N] = p.probs()[N] / static_cast<double>(N + 1);
  return UnpolarizedSpectrum(rho.cutoff(), std::move(lambdas));
}

}  // namespace qpol
