#pragma once

#include <vector>

#include "qpol/degrees.hpp"
#include "qpol/fock.hpp"

namespace qpol {

/// |k⟩_H |N-k⟩_V as a pure state.
PureState fock_state(int N, int k, int cutoff);

/// SU(2) coherent state on manifold N with amplitudes
/// sqrt(C(N,k)) sin(θ/2)^{N-k} cos(θ/2)^k e^{-ikφ} on |N,k⟩.
/// With this convention θ = 0 puts every photon in the H mode.
PureState su2_coherent(int N, double theta, double phi, int cutoff);

/// Product of two quadrature coherent states, written as a Poissonian
/// superposition of SU(2) coherent states.
struct CoherentSpec {
  double mean_photons = 0.0;  // N̄ = |α_H|² + |α_V|²
  double theta = 0.0;
  double phi = 0.0;
  double tail_tol = 1e-12;
  int max_cutoff = 150;

  /// θ and φ from α_H = e^{-iφ/2} sqrt(N̄) sin(θ/2), α_V = e^{iφ/2} sqrt(N̄) cos(θ/2).
  static CoherentSpec from_amplitudes(Complex alpha_h, Complex alpha_v, double tail_tol = 1e-12);
};

struct CoherentState {
  PureState state;
  /// e^{-N̄/2} N̄^{N/2} / sqrt(N!) before renormalization; this is an amplitude.
  std::vector<double> poisson_amplitudes;
  /// Poisson probability mass above the cutoff that was discarded.
  double tail_mass = 0.0;
};

/// Smallest cutoff whose Poisson tail Σ_{N > cutoff} e^{-N̄} N̄^N / N! is ≤ tail_tol.
int poisson_cutoff(double mean_photons, double tail_tol, int max_cutoff);

/// Poisson tail mass above `cutoff`, summed directly (no 1 - Σ cancellation).
double poisson_tail(double mean_photons, int cutoff);

CoherentState two_mode_coherent(const CoherentSpec& spec);

/// Σ p_{Nk} |Ψ_k^(N)⟩⟨Ψ_k^(N)|. `bases[N]` holds the orthonormal vectors of
/// manifold N as columns; an empty `bases` means the Fock basis. Throws
/// std::invalid_argument when a basis deviates from orthonormality by more than 1e-10.
DensityMatrix diagonal_mixture(const DiagonalProbs& probs, const std::vector<CMatrix>& bases, int cutoff);

}  // namespace qpol
