#pragma once

#include <vector>

#include "qpol/fock.hpp"

namespace qpol {

/// Weights λ_N of an unpolarized state σ = ⊕_N λ_N 1_N, with λ_N ≥ 0 and
/// Σ (N+1) λ_N = 1.
class UnpolarizedSpectrum {
 public:
  /// The vacuum spectrum λ_0 = 1.
  UnpolarizedSpectrum() : cutoff_(0), lambdas_{1.0} {}
  UnpolarizedSpectrum(int cutoff, std::vector<double> lambdas, double tol = 1e-10);

  /// The spectrum with all weight on manifold N.
  static UnpolarizedSpectrum concentrated(int N, int cutoff);

  int cutoff() const { return cutoff_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double operator[](int N) const { return lambdas_.at(static_cast<std::size_t>(N)); }

 private:
  int cutoff_;
  std::vector<double> lambdas_;
};

/// Σ (N+1) λ_N, the quantity pinned to 1.
double weighted_sum(const std::vector<double>& lambdas);

DensityMatrix to_density(const UnpolarizedSpectrum& spec);

/// Tr σ² = Σ (N+1) λ_N².
double spectrum_purity(const UnpolarizedSpectrum& spec);

bool is_unpolarized(const DensityMatrix& rho, double tol = 1e-9);

/// Hilbert-Schmidt closest unpolarized state: λ_N = p_N / (N+1).
UnpolarizedSpectrum hs_closest(const DensityMatrix& rho);

}  // namespace qpol
