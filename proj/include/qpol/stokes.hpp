#pragma once

#include "qpol/fock.hpp"

namespace qpol {

enum class StokesOp { S0, S1, S2, S3 };

/// Stokes operator on the truncated space, normalized so that
/// S3|N,k⟩ = (2k - N)|N,k⟩ and [S1, S2] = 2i S3. The returned reference stays
/// valid for the lifetime of the program (matrices are memoized per cutoff).
const CMatrix& stokes_matrix(StokesOp which, int cutoff);

/// Block of a Stokes operator restricted to manifold N.
CMatrix stokes_block(StokesOp which, int N);

struct StokesMoments {
  double s0 = 0.0;
  Eigen::Vector3d svec = Eigen::Vector3d::Zero();
  double variance_sum = 0.0;  // (ΔS1)² + (ΔS2)² + (ΔS3)²
};

StokesMoments stokes_moments(const DensityMatrix& rho);
StokesMoments stokes_moments(const PureState& psi);

/// |⟨S⟩| / ⟨S0⟩. Throws std::domain_error for the vacuum.
double semiclassical_degree(const DensityMatrix& rho);
double semiclassical_degree(const PureState& psi);

/// U = exp(-i (angle/2) n·S) exp(-i phase0 S0), assembled manifold by manifold.
CMatrix polarization_unitary(const Eigen::Vector3d& axis, double angle, double phase0, int cutoff);

/// U ρ U†.
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& unitary);

}  // namespace qpol
