#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qpol/fock.hpp"

namespace qpol {

/// ρ = p |Ψ1⟩⟨Ψ1| + (1-p) |Ψ2⟩⟨Ψ2| + q |Ψ1⟩⟨Ψ2| + q* |Ψ2⟩⟨Ψ1|, with |Ψ1⟩ a
/// pure N1-photon state and |Ψ2⟩ a pure N2-photon state.
class TwoManifoldState {
 public:
  TwoManifoldState(int N1, int N2, double p, Complex q, PureState psi1, PureState psi2);

  /// Uses |N1, 0⟩ and |N2, 0⟩ as the two pure components.
  static TwoManifoldState with_fock_components(int N1, int N2, double p, Complex q);

  /// The pure superposition, |q|² = p(1-p) with q real.
  static TwoManifoldState pure(int N1, int N2, double p);
  /// The incoherent mixture, q = 0.
  static TwoManifoldState diagonal(int N1, int N2, double p);

  int N1() const { return n1_; }
  int N2() const { return n2_; }
  double p() const { return p_; }
  Complex q() const { return q_; }
  double q_squared() const { return std::norm(q_); }
  /// p(1-p) - |q|², zero when within rounding noise of the pure boundary.
  double coherence_gap() const;
  bool is_pure() const;
  const PureState& psi1() const { return psi1_; }
  const PureState& psi2() const { return psi2_; }

 private:
  int n1_;
  int n2_;
  double p_;
  Complex q_;
  PureState psi1_;
  PureState psi2_;
};

DensityMatrix embed(const TwoManifoldState& state, int cutoff);

/// Tr ρ² = p² + (1-p)² + 2|q|².
double two_manifold_purity(const TwoManifoldState& state);

/// Eigenvalues (χ+, χ-) of σ^{1/2} ρ σ^{1/2} restricted to span{Ψ1, Ψ2}.
std::pair<double, double> chi_eigenvalues(const TwoManifoldState& state, double lambda1, double lambda2);

/// λ1 p + λ2 (1-p) + 2 sqrt(λ1 λ2 [p(1-p) - |q|²]).
double fidelity_closed(const TwoManifoldState& state, double lambda1, double lambda2);

/// λ2 fixed by the trace constraint (N1+1) λ1 + (N2+1) λ2 = 1.
double constrained_lambda2(const TwoManifoldState& state, double lambda1);

/// dF/dλ1 along the constraint; zero at an interior optimum.
double stationarity_residual(const TwoManifoldState& state, double lambda1);

/// Maximizing (λ1, λ2). Pure states take the piecewise vertex solution (λ1 = 0
/// at the threshold), mixed states the interior stationary point.
std::pair<double, double> optimal_spectrum(const TwoManifoldState& state);

struct DegreePair {
  double hs = 0.0;
  double bures = 0.0;
};

DegreePair degree_pair(const TwoManifoldState& state);

struct Figure1Row {
  double p = 0.0;
  double q_squared = 0.0;
  std::string label;  // "pure", "diagonal", or a marker name
  double hs = 0.0;
  double bures = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// `resolution` evenly spaced values of p in [0, 1], each evaluated for the
/// pure and the diagonal coherence, sorted by p. For (N1, N2) = (1, 2) the
/// marker states A (pure, p = 0.9) and B (diagonal, p = 4/7) are appended.
std::vector<Figure1Row> figure1_sweep(int N1, int N2, int resolution);

/// p, q_squared, case, P_HS, P_B, lambda1, lambda2 with 12 significant digits.
void write_figure1_csv(std::ostream& out, const std::vector<Figure1Row>& rows);

}  // namespace qpol
