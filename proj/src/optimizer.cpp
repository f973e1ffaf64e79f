#include "qpol/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "qpol/linalg.hpp"

namespace qpol {

namespace {

// Eigenvalues of ρ at or below this are treated as roundoff.
constexpr double kRankCutoff = 1e-13;
// Relative floor on eigenvalues of K inside the gradient; keeps the
// sqrt-singularity at λ_N = 0 large but finite.
constexpr double kGradientFloor = 1e-15;

constexpr int kNonmonotoneMemory = 10;
constexpr double kArmijo = 1e-4;
constexpr double kStepMin = 1e-12;
constexpr double kStepMax = 1e12;

double weight(std::size_t N) { return static_cast<double>(N + 1); }

}  // namespace

std::vector<double> project_weighted_simplex(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n == 0) throw std::invalid_argument("cannot project an empty vector");
  // x_N = max(0, y_N - τ w_N); breakpoints at τ = y_N / w_N.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return y[a] / weight(a) > y[b] / weight(b); });

  double sum_wy = 0.0;
  double sum_ww = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t idx = order[j];
    sum_wy += weight(idx) * y[idx];
    sum_ww += weight(idx) * weight(idx);
    const double candidate = (sum_wy - 1.0) / sum_ww;
    if (y[idx] / weight(idx) > candidate) tau = candidate;
    else break;
  }
  std::vector<double> x(n);
  for (std::size_t N = 0; N < n; ++N) x[N] = std::max(0.0, y[N] - tau * weight(N));
  return x;
}

FidelityObjective::FidelityObjective(const DensityMatrix& rho) : cutoff_(rho.cutoff()), rank_(0) {
  const auto eig = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] > kRankCutoff) kept.push_back(i);
  rank_ = static_cast<int>(kept.size());

  CMatrix factor(rho.dimension(), rank_);
  for (int c = 0; c < rank_; ++c) factor.col(c) = eig.vectors.col(kept[c]) * std::sqrt(eig.values[kept[c]]);

  manifold_gram_.reserve(static_cast<std::size_t>(cutoff_ + 1));
  for (int N = 0; N <= cutoff_; ++N) {
    const CMatrix rows = factor.middleRows(manifold_offset(N), N + 1);
    manifold_gram_.push_back(rows.adjoint() * rows);
  }
}

CMatrix FidelityObjective::assemble(const std::vector<double>& lambdas) const {
  if (lambdas.size() != manifold_gram_.size()) throw std::invalid_argument("spectrum length does not match cutoff");
  CMatrix k = CMatrix::Zero(rank_, rank_);
  for (std::size_t N = 0; N < lambdas.size(); ++N)
    if (lambdas[N] != 0.0) k += lambdas[N] * manifold_gram_[N];
  return k;
}

double FidelityObjective::value(const std::vector<double>& lambdas) const {
  return trace_sqrt(assemble(lambdas));
}

std::vector<double> FidelityObjective::gradient(const std::vector<double>& lambdas) const {
  const auto eig = hermitian_eigen(assemble(lambdas));
  const double scale = eig.values.size() > 0 ? std::max(eig.values.maxCoeff(), 0.0) : 0.0;
  const double floor = std::max(kGradientFloor * scale, std::numeric_limits<double>::min());
  RVector inv_root(eig.values.size());
  for (Eigen::Index i = 0; i < inv_root.size(); ++i) inv_root[i] = 0.5 / std::sqrt(std::max(eig.values[i], floor));

  std::vector<double> grad(lambdas.size(), 0.0);
  for (std::size_t N = 0; N < lambdas.size(); ++N) {
    const CMatrix rotated = eig.vectors.adjoint() * manifold_gram_[N] * eig.vectors;
    double g = 0.0;
    for (Eigen::Index i = 0; i < inv_root.size(); ++i) g += inv_root[i] * rotated(i, i).real();
    grad[N] = g;
  }
  return grad;
}

std::vector<double> FidelityObjective::gradient_fd(const std::vector<double>& lambdas, double step) const {
  std::vector<double> grad(lambdas.size(), 0.0);
  const double center = value(lambdas);
  for (std::size_t N = 0; N < lambdas.size(); ++N) {
    auto plus = lambdas;
    plus[N] += step;
    if (lambdas[N] >= step) {
      auto minus = lambdas;
      minus[N] -= step;
      grad[N] = (value(plus) - value(minus)) / (2.0 * step);
    } else {
      grad[N] = (value(plus) - center) / step;
    }
  }
  return grad;
}

double projected_gradient_residual(const std::vector<double>& lambdas, const std::vector<double>& grad) {
  std::vector<double> moved(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) moved[i] = lambdas[i] + grad[i];
  const auto projected = project_weighted_simplex(moved);
  double r = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) r = std::max(r, std::abs(projected[i] - lambdas[i]));
  return r;
}

OptimizerResult maximize_root_fidelity(const FidelityObjective& objective, std::vector<double> start,
                                       const OptimizerSettings& settings) {
  auto grad_of = [&](const std::vector<double>& x) {
    return settings.gradient == GradientMode::analytic ? objective.gradient(x)
                                                       : objective.gradient_fd(x, settings.fd_step);
  };
  const std::size_t n = start.size();

  std::vector<double> x = project_weighted_simplex(start);
  double fx = objective.value(x);
  std::vector<double> gx = grad_of(x);
  double residual = projected_gradient_residual(x, gx);

  OptimizerResult best{x, fx, 0, residual};
  std::deque<double> history{fx};
  double alpha = residual > 0.0 ? std::clamp(1.0 / residual, kStepMin, kStepMax) : 1.0;

  int iter = 0;
  while (residual > settings.kkt_tol && iter < settings.max_iter) {
    ++iter;
    std::vector<double> trial(n);
    for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + alpha * gx[i];
    const auto target = project_weighted_simplex(trial);
    std::vector<double> dir(n);
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = target[i] - x[i];
      slope += gx[i] * dir[i];
    }

    const double reference = *std::min_element(history.begin(), history.end());
    double t = 1.0;
    std::vector<double> next(n);
    double fnext = 0.0;
    bool accepted = false;
    while (t > 1e-20) {
      for (std::size_t i = 0; i < n; ++i) next[i] = std::max(0.0, x[i] + t * dir[i]);
      fnext = objective.value(next);
      if (fnext >= reference + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const std::vector<double> gnext = grad_of(next);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = next[i] - x[i];
      ss += s * s;
      sy += s * (gnext[i] - gx[i]);
    }
    // Curvature of -f along s is -sy; the BB step is ss / (-sy).
    alpha = (-sy > 0.0) ? std::clamp(ss / -sy, kStepMin, kStepMax) : kStepMax;

    x = std::move(next);
    fx = fnext;
    gx = gnext;
    residual = projected_gradient_residual(x, gx);
    history.push_back(fx);
    if (history.size() > kNonmonotoneMemory) history.pop_front();

    if (fx > best.objective || (fx == best.objective && residual < best.residual)) best = {x, fx, iter, residual};
    if (residual <= settings.kkt_tol) best = {x, fx, iter, residual};
  }

  if (residual <= settings.kkt_tol) return {x, fx, iter, residual};
  best.iterations = iter;
  throw OptimizerError("Bures optimizer did not reach the KKT tolerance", best);
}

}  // namespace qpol
