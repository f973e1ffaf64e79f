#include "qpol/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qpol/linalg.hpp"

namespace qpol {

int basis_index(BasisLabel label, int cutoff) {
  if (cutoff < 0) throw std::out_of_range("negative cutoff");
  if (label.N < 0 || label.N > cutoff) throw std::out_of_range("basis label exceeds cutoff");
  if (label.k < 0 || label.k > label.N) throw std::out_of_range("basis label has k outside [0, N]");
  return manifold_offset(label.N) + label.k;
}

BasisLabel basis_label(int index, int cutoff) {
  if (index < 0 || index >= dimension(cutoff)) throw std::out_of_range("basis index exceeds cutoff");
  int N = 0;
  while (manifold_offset(N + 1) <= index) ++N;
  return {N, index - manifold_offset(N)};
}

PureState::PureState(int cutoff, CVector amplitudes, const Tolerances& tol)
    : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  if (cutoff_ < 0) throw std::invalid_argument("negative cutoff");
  if (amplitudes_.size() != qpol::dimension(cutoff_))
    throw std::invalid_argument("amplitude vector length does not match cutoff " + std::to_string(cutoff_));
  if (std::abs(amplitudes_.norm() - 1.0) > tol.norm) throw std::invalid_argument("pure state is not normalized");
}

Complex PureState::amplitude(BasisLabel label) const { return amplitudes_[basis_index(label, cutoff_)]; }

PureState PureState::embedded(int new_cutoff) const {
  if (new_cutoff < cutoff_) throw std::invalid_argument("cannot embed into a smaller cutoff");
  CVector padded = CVector::Zero(qpol::dimension(new_cutoff));
  padded.head(amplitudes_.size()) = amplitudes_;
  return PureState(new_cutoff, std::move(padded));
}

DensityMatrix::DensityMatrix(int cutoff, CMatrix entries, const Tolerances& tol)
    : cutoff_(cutoff), entries_(std::move(entries)) {
  if (cutoff_ < 0) throw std::invalid_argument("negative cutoff");
  const int d = qpol::dimension(cutoff_);
  if (entries_.rows() != d || entries_.cols() != d)
    throw std::invalid_argument("density matrix shape does not match cutoff " + std::to_string(cutoff_));
  if (max_abs(entries_ - entries_.adjoint()) > tol.hermitian) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(entries_.trace() - Complex(1.0)) > tol.trace) throw std::invalid_argument("density matrix trace is not 1");
  if (hermitian_eigen(entries_).values[0] < -tol.psd)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix::DensityMatrix(Trusted, int cutoff, CMatrix entries) : cutoff_(cutoff), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return DensityMatrix(Trusted{}, psi.cutoff(), a * a.adjoint());
}

Complex DensityMatrix::entry(BasisLabel row, BasisLabel col) const {
  return entries_(basis_index(row, cutoff_), basis_index(col, cutoff_));
}

DensityMatrix DensityMatrix::embedded(int new_cutoff) const {
  if (new_cutoff < cutoff_) throw std::invalid_argument("cannot embed into a smaller cutoff");
  const int d = qpol::dimension(new_cutoff);
  CMatrix padded = CMatrix::Zero(d, d);
  padded.topLeftCorner(entries_.rows(), entries_.cols()) = entries_;
  return DensityMatrix(Trusted{}, new_cutoff, std::move(padded));
}

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probs, double tol) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty photon-number distribution");
  for (double p : probs_)
    if (!(p >= -tol)) throw std::invalid_argument("negative photon-number probability");
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > tol) throw std::invalid_argument("photon-number distribution does not sum to 1");
}

PhotonNumberDistribution photon_distribution(const DensityMatrix& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.cutoff() + 1), 0.0);
  const CMatrix& m = rho.matrix();
  for (int N = 0; N <= rho.cutoff(); ++N)
    for (int k = 0; k <= N; ++k) p[static_cast<std::size_t>(N)] += m(manifold_offset(N) + k, manifold_offset(N) + k).real();
  return PhotonNumberDistribution(std::move(p));
}

PhotonNumberDistribution photon_distribution(const PureState& psi) {
  std::vector<double> p(static_cast<std::size_t>(psi.cutoff() + 1), 0.0);
  for (int N = 0; N <= psi.cutoff(); ++N)
    p[static_cast<std::size_t>(N)] = psi.amplitudes().segment(manifold_offset(N), N + 1).squaredNorm();
  return PhotonNumberDistribution(std::move(p));
}

double purity(const DensityMatrix& rho) {
  // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

CMatrix block(const DensityMatrix& rho, int N, int Nprime) {
  if (N < 0 || Nprime < 0 || N > rho.cutoff() || Nprime > rho.cutoff())
    throw std::out_of_range("manifold index exceeds cutoff");
  return rho.matrix().block(manifold_offset(N), manifold_offset(Nprime), N + 1, Nprime + 1);
}

}  // namespace qpol
