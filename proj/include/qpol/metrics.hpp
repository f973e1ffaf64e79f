#pragma once

#include "qpol/fock.hpp"

namespace qpol {

/// Tr[(ρ - σ)²].
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity [Tr sqrt(σ^{1/2} ρ σ^{1/2})]², squared-trace convention.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 2 (1 - sqrt F).
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr[ρ (ln ρ - ln σ)]. Throws std::domain_error("relative entropy infinite")
/// when ρ has weight outside the support of σ.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 0 if the two matrices agree entrywise within `tol`, else 1.
int discrete_distance(const DensityMatrix& rho, const DensityMatrix& sigma, double tol = 1e-9);

}  // namespace qpol
