#pragma once

#include <string_view>
#include <vector>

#include "qpol/fock.hpp"
#include "qpol/optimizer.hpp"
#include "qpol/unpolarized.hpp"

namespace qpol {

enum class DegreeMethod { closed_form, optimizer, rank1 };

std::string_view to_string(DegreeMethod method);

struct DegreeReport {
  double value = 0.0;
  DegreeMethod method = DegreeMethod::closed_form;
  UnpolarizedSpectrum optimal_spectrum;
  int iterations = 0;
  double residual = 0.0;
};

/// Weights p_{Nk} of a diagonal state, indexed [N][k]. A manifold's list may be
/// shorter than N+1 (missing entries are zero).
using DiagonalProbs = std::vector<std::vector<double>>;

/// Tr ρ² - Σ p_N² / (N+1).
DegreeReport degree_hs(const DensityMatrix& rho);

/// Bures degree of a pure state: 1 - max_N sqrt(p_N / (N+1)). Ties (within
/// 1e-14) go to the smallest N.
DegreeReport degree_bures_pure(const PureState& psi);

/// Bures degree of a diagonal state, 1 - sqrt(Σ s_N² / (N+1)) with
/// s_N = Σ_k sqrt(p_{Nk}). Throws std::invalid_argument on unnormalized input.
DegreeReport degree_bures_diagonal(const DiagonalProbs& probs);

/// 1 - sup sqrt F over the unpolarized set, found by projected-gradient ascent
/// on the λ spectrum (the objective is concave, so the KKT point is global).
/// Rethrows OptimizerError when the optimizer does not converge.
DegreeReport degree_bures_general(const DensityMatrix& rho, const OptimizerSettings& settings = {});

/// 0 for unpolarized states, 1 otherwise.
int degree_discrete(const DensityMatrix& rho, double tol = 1e-9);

struct DegreeBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bracket on the diagonal-state Bures degree from sqrt(p_N) ≤ s_N ≤ sqrt((N+1) p_N).
DegreeBracket diagonal_bures_bounds(const DiagonalProbs& probs);

/// Converts 1 - sup sqrt F into the alternative 1 - sup F.
inline double alternative_bures(double canonical) { return 1.0 - (1.0 - canonical) * (1.0 - canonical); }

}  // namespace qpol
