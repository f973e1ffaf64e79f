#include "qpol/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qpol::random {

CMatrix ginibre(int rows, int cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

CMatrix haar_unitary(int n, Engine& rng) {
  const CMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix block_unitary(int cutoff, Engine& rng) {
  const int d = dimension(cutoff);
  CMatrix u = CMatrix::Zero(d, d);
  for (int N = 0; N <= cutoff; ++N) u.block(manifold_offset(N), manifold_offset(N), N + 1, N + 1) = haar_unitary(N + 1, rng);
  return u;
}

PureState pure_state(int cutoff, Engine& rng) {
  CVector v = ginibre(dimension(cutoff), 1, rng).col(0);
  v /= v.norm();
  return PureState(cutoff, std::move(v));
}

PureState manifold_state(int N, int cutoff, Engine& rng) {
  CVector v = CVector::Zero(dimension(cutoff));
  v.segment(manifold_offset(N), N + 1) = ginibre(N + 1, 1, rng).col(0);
  v /= v.norm();
  return PureState(cutoff, std::move(v));
}

DensityMatrix density(int cutoff, Engine& rng, int rank) {
  const int d = dimension(cutoff);
  const CMatrix g = ginibre(d, rank <= 0 ? d : rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(cutoff, std::move(rho));
}

UnpolarizedSpectrum spectrum(int cutoff, Engine& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> mu(static_cast<std::size_t>(cutoff + 1));
  double total = 0.0;
  for (auto& m : mu) total += (m = expo(rng));
  std::vector<double> lambdas(mu.size());
  for (std::size_t N = 0; N < mu.size(); ++N) lambdas[N] = mu[N] / total / static_cast<double>(N + 1);
  return UnpolarizedSpectrum(cutoff, std::move(lambdas));
}

DiagonalProbs diagonal_probs(int cutoff, Engine& rng) {
  std::exponential_distribution<double> expo(1.0);
  DiagonalProbs probs(static_cast<std::size_t>(cutoff + 1));
  double total = 0.0;
  for (std::size_t N = 0; N < probs.size(); ++N) {
    probs[N].resize(N + 1);
    for (auto& p : probs[N]) total += (p = expo(rng));
  }
  for (auto& manifold : probs) {
    for (auto& p : manifold) p /= total;
    std::sort(manifold.begin(), manifold.end(), std::greater<>());
  }
  return probs;
}

}  // namespace qpol::random
