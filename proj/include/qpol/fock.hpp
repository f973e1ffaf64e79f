#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qpol {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Validation tolerances shared by the state types.
struct Tolerances {
  double norm = 1e-12;       ///< |‖ψ‖ - 1| for pure states
  double hermitian = 1e-12;  ///< max |ρ_ij - conj(ρ_ji)|
  double trace = 1e-10;      ///< |Tr ρ - 1|
  double psd = 1e-10;        ///< smallest eigenvalue must be ≥ -psd
};

/// |N,k⟩ = |k⟩_H ⊗ |N-k⟩_V.
struct BasisLabel {
  int N = 0;
  int k = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Dimension of the two-mode space truncated at `cutoff` total photons.
constexpr int dimension(int cutoff) { return (cutoff + 1) * (cutoff + 2) / 2; }

/// Flat index of the first state of manifold N.
constexpr int manifold_offset(int N) { return N * (N + 1) / 2; }

/// Manifold-major, k ascending. Throws std::out_of_range when the label
/// does not fit under `cutoff`.
int basis_index(BasisLabel label, int cutoff);

/// Inverse of basis_index.
BasisLabel basis_label(int index, int cutoff);

/// Normalized amplitude vector on the truncated space.
class PureState {
 public:
  PureState(int cutoff, CVector amplitudes, const Tolerances& tol = {});

  int cutoff() const { return cutoff_; }
  int dimension() const { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(BasisLabel label) const;

  /// Zero-pads the amplitudes into a larger truncation.
  PureState embedded(int new_cutoff) const;

 private:
  int cutoff_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on the truncated space.
class DensityMatrix {
 public:
  DensityMatrix(int cutoff, CMatrix entries, const Tolerances& tol = {});

  /// |ψ⟩⟨ψ|; positivity holds by construction so no eigensolve is done.
  static DensityMatrix from_pure(const PureState& psi);

  int cutoff() const { return cutoff_; }
  int dimension() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& matrix() const { return entries_; }
  Complex entry(BasisLabel row, BasisLabel col) const;

  DensityMatrix embedded(int new_cutoff) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, int cutoff, CMatrix entries);

  int cutoff_;
  CMatrix entries_;
};

/// Probabilities of the total photon number, p_0..p_{N_max}.
class PhotonNumberDistribution {
 public:
  explicit PhotonNumberDistribution(std::vector<double> probs, double tol = 1e-10);

  const std::vector<double>& probs() const { return probs_; }
  double operator[](int N) const { return probs_.at(static_cast<std::size_t>(N)); }
  int cutoff() const { return static_cast<int>(probs_.size()) - 1; }

 private:
  std::vector<double> probs_;
};

PhotonNumberDistribution photon_distribution(const DensityMatrix& rho);
PhotonNumberDistribution photon_distribution(const PureState& psi);

/// Tr ρ².
double purity(const DensityMatrix& rho);

/// Submatrix ρ_{Nk,N'k'} of shape (N+1)×(N'+1).
CMatrix block(const DensityMatrix& rho, int N, int Nprime);

}  // namespace qpol
