#pragma once

#include <stdexcept>
#include <vector>

#include "qpol/fock.hpp"

namespace qpol {

enum class GradientMode { analytic, finite_difference };

struct OptimizerSettings {
  int max_iter = 10000;
  double kkt_tol = 1e-9;
  double fd_step = 1e-6;
  bool alternative_definition = false;  // report 1 - sup F instead of 1 - sup sqrt(F)
  GradientMode gradient = GradientMode::analytic;
};

/// Euclidean projection onto {x ≥ 0, Σ (N+1) x_N = 1}.
std::vector<double> project_weighted_simplex(const std::vector<double>& y);

/// sqrt F(ρ, σ(λ)) as a function of the unpolarized weights λ.
///
/// With ρ = W W† (W built from the non-negligible eigenpairs of ρ), the nonzero
/// spectrum of σ^{1/2} ρ σ^{1/2} equals that of K(λ) = Σ_N λ_N W_N† W_N, where
/// W_N is the row block of manifold N. K is linear in λ, so sqrt F = Tr sqrt K
/// is concave and its gradient follows from first-order eigenvalue perturbation.
class FidelityObjective {
 public:
  explicit FidelityObjective(const DensityMatrix& rho);

  int cutoff() const { return cutoff_; }
  /// Number of eigenpairs of ρ kept in the factorization.
  int rank() const { return rank_; }

  double value(const std::vector<double>& lambdas) const;
  std::vector<double> gradient(const std::vector<double>& lambdas) const;
  /// Central differences, one-sided where λ_N < step.
  std::vector<double> gradient_fd(const std::vector<double>& lambdas, double step) const;

 private:
  CMatrix assemble(const std::vector<double>& lambdas) const;

  int cutoff_;
  int rank_;
  std::vector<CMatrix> manifold_gram_;  // W_N† W_N, rank×rank
};

/// ‖P(λ + ∇) - λ‖_∞, zero exactly at KKT points of the weighted-simplex problem.
double projected_gradient_residual(const std::vector<double>& lambdas, const std::vector<double>& grad);

struct OptimizerResult {
  std::vector<double> lambdas;
  double objective = 0.0;  // sqrt F at lambdas
  int iterations = 0;
  double residual = 0.0;
};

class OptimizerError : public std::runtime_error {
 public:
  OptimizerError(const std::string& what, OptimizerResult best)
      : std::runtime_error(what), best_(std::move(best)) {}

  const OptimizerResult& best() const { return best_; }

 private:
  OptimizerResult best_;
};

/// Spectral projected-gradient ascent (Barzilai-Borwein steps with a
/// nonmonotone backtracking line search) on the weighted simplex.
/// Throws OptimizerError if the residual is still above kkt_tol after max_iter.
OptimizerResult maximize_root_fidelity(const FidelityObjective& objective, std::vector<double> start,
                                       const OptimizerSettings& settings);

}  // namespace qpol
