#include "qpol/twolevel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "qpol/states.hpp"

namespace qpol {

namespace {

// p(1-p) - |q|² at or below this is rounding noise of the inputs.
double gap_noise(double p, double q_squared) {
  return 16.0 * std::numeric_limits<double>::epsilon() * std::max(p * (1.0 - p), q_squared);
}

void require_confined(const PureState& psi, int N, const char* name) {
  if (N > psi.cutoff()) throw std::invalid_argument(std::string(name) + " does not reach its manifold");
  const double inside = psi.amplitudes().segment(manifold_offset(N), N + 1).squaredNorm();
  if (std::abs(inside - 1.0) > 1e-12) throw std::invalid_argument(std::string(name) + " is not confined to its manifold");
}

}  // namespace

TwoManifoldState::TwoManifoldState(int N1, int N2, double p, Complex q, PureState psi1, PureState psi2)
    : n1_(N1), n2_(N2), p_(p), q_(q), psi1_(std::move(psi1)), psi2_(std::move(psi2)) {
  if (N1 < 0 || N2 < 0) throw std::invalid_argument("manifold indices must be nonnegative");
  if (N1 == N2) throw std::invalid_argument("two-manifold state needs N1 != N2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (std::norm(q) > p * (1.0 - p) + 1e-12) throw std::invalid_argument("|q|^2 exceeds p(1-p); state is not positive");
  require_confined(psi1_, N1, "psi1");
  require_confined(psi2_, N2, "psi2");
}

TwoManifoldState TwoManifoldState::with_fock_components(int N1, int N2, double p, Complex q) {
  if (N1 < 0 || N2 < 0) throw std::invalid_argument("manifold indices must be nonnegative");
  return TwoManifoldState(N1, N2, p, q, fock_state(N1, 0, N1), fock_state(N2, 0, N2));
}

TwoManifoldState TwoManifoldState::pure(int N1, int N2, double p) {
  return with_fock_components(N1, N2, p, std::sqrt(std::max(0.0, p * (1.0 - p))));
}

TwoManifoldState TwoManifoldState::diagonal(int N1, int N2, double p) { return with_fock_components(N1, N2, p, 0.0); }

double TwoManifoldState::coherence_gap() const {
  return is_pure() ? 0.0 : p_ * (1.0 - p_) - std::norm(q_);
}

bool TwoManifoldState::is_pure() const { return p_ * (1.0 - p_) - std::norm(q_) <= gap_noise(p_, std::norm(q_)); }

DensityMatrix embed(const TwoManifoldState& state, int cutoff) {
  if (cutoff < std::max(state.N1(), state.N2())) throw std::invalid_argument("cutoff too small for the two-manifold state");
  const CVector a = state.psi1().embedded(std::max(cutoff, state.psi1().cutoff())).amplitudes().head(dimension(cutoff));
  const CVector b = state.psi2().embedded(std::max(cutoff, state.psi2().cutoff())).amplitudes().head(dimension(cutoff));
  CMatrix rho = state.p() * a * a.adjoint() + (1.0 - state.p()) * b * b.adjoint() + state.q() * a * b.adjoint() +
                std::conj(state.q()) * b * a.adjoint();
  return DensityMatrix(cutoff, std::move(rho));
}

double two_manifold_purity(const TwoManifoldState& state) {
  const double p = state.p();
  return p * p + (1.0 - p) * (1.0 - p) + 2.0 * state.q_squared();
}

std::pair<double, double> chi_eigenvalues(const TwoManifoldState& state, double lambda1, double lambda2) {
  if (lambda1 < 0.0 || lambda2 < 0.0) throw std::invalid_argument("lambda weights must be nonnegative");
  const double a = lambda1 * state.p();
  const double b = lambda2 * (1.0 - state.p());
  const double disc = std::sqrt((a - b) * (a - b) + 4.0 * lambda1 * lambda2 * state.q_squared());
  return {0.5 * (a + b + disc), std::max(0.0, 0.5 * (a + b - disc))};
}

double fidelity_closed(const TwoManifoldState& state, double lambda1, double lambda2) {
  if (lambda1 < 0.0 || lambda2 < 0.0) throw std::invalid_argument("lambda weights must be nonnegative");
  const double p = state.p();
  return lambda1 * p + lambda2 * (1.0 - p) + 2.0 * std::sqrt(lambda1 * lambda2 * state.coherence_gap());
}

double constrained_lambda2(const TwoManifoldState& state, double lambda1) {
  return (1.0 - (state.N1() + 1.0) * lambda1) / (state.N2() + 1.0);
}

double stationarity_residual(const TwoManifoldState& state, double lambda1) {
  const double n1 = state.N1() + 1.0;
  const double n2 = state.N2() + 1.0;
  const double p = state.p();
  const double inner = lambda1 * (1.0 - lambda1 * n1) * n2;
  if (!(inner > 0.0)) throw std::domain_error("stationarity residual needs 0 < lambda1 < 1/(N1+1)");
  return p - n1 * (1.0 - p) / n2 + (1.0 - 2.0 * lambda1 * n1) * std::sqrt(state.coherence_gap() / inner);
}

std::pair<double, double> optimal_spectrum(const TwoManifoldState& state) {
  const double n1 = state.N1() + 1.0;
  const double n2 = state.N2() + 1.0;
  const double p = state.p();
  double lambda1 = 0.0;
  if (state.is_pure()) {
    const double threshold = n1 / (n1 + n2);
    const bool tie = std::abs(p - threshold) <= 1e-15;
    lambda1 = (!tie && p > threshold) ? 1.0 / n1 : 0.0;
  } else {
    const double numerator = n1 * (1.0 - p) - n2 * p;
    const double base = 1.0 + state.N1() * (1.0 - p) + state.N2() * p;
    const double radicand = std::max(0.0, base * base - 4.0 * n1 * n2 * state.q_squared());
    lambda1 = (1.0 - numerator / std::sqrt(radicand)) / (2.0 * n1);
    lambda1 = std::clamp(lambda1, 0.0, 1.0 / n1);
  }
  return {lambda1, std::max(0.0, constrained_lambda2(state, lambda1))};
}

DegreePair degree_pair(const TwoManifoldState& state) {
  const double p = state.p();
  const double hs =
      two_manifold_purity(state) - p * p / (state.N1() + 1.0) - (1.0 - p) * (1.0 - p) / (state.N2() + 1.0);
  const auto [l1, l2] = optimal_spectrum(state);
  const double f = std::min(1.0, fidelity_closed(state, l1, l2));
  return {std::max(0.0, hs), 1.0 - std::sqrt(f)};
}

namespace {

Figure1Row make_row(const TwoManifoldState& state, std::string label) {
  const auto degrees = degree_pair(state);
  const auto [l1, l2] = optimal_spectrum(state);
  return {state.p(), state.q_squared(), std::move(label), degrees.hs, degrees.bures, l1, l2};
}

}  // namespace

std::vector<Figure1Row> figure1_sweep(int N1, int N2, int resolution) {
  if (resolution < 2) throw std::invalid_argument("figure1 resolution must be at least 2");
  if (N1 < 0 || N2 < 0 || N1 == N2) throw std::invalid_argument("figure1 needs distinct nonnegative manifolds");
  std::vector<Figure1Row> rows;
  rows.reserve(static_cast<std::size_t>(2 * resolution + 2));
  for (int i = 0; i < resolution; ++i) {
    const double p = static_cast<double>(i) / (resolution - 1);
    rows.push_back(make_row(TwoManifoldState::pure(N1, N2, p), "pure"));
    rows.push_back(make_row(TwoManifoldState::diagonal(N1, N2, p), "diagonal"));
  }
  std::sort(rows.begin(), rows.end(), [](const Figure1Row& a, const Figure1Row& b) {
    return std::tie(a.p, a.label) < std::tie(b.p, b.label);
  });
  if (N1 == 1 && N2 == 2) {
    rows.push_back(make_row(TwoManifoldState::pure(N1, N2, 0.9), "marker_A"));
    rows.push_back(make_row(TwoManifoldState::diagonal(N1, N2, 4.0 / 7.0), "marker_B"));
  }
  return rows;
}

void write_figure1_csv(std::ostream& out, const std::vector<Figure1Row>& rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(12);
  out << "p,q_squared,case,P_HS,P_B,lambda1,lambda2\n";
  for (const auto& r : rows)
    out << r.p << ',' << r.q_squared << ',' << r.label << ',' << r.hs << ',' << r.bures << ',' << r.lambda1 << ','
        << r.lambda2 << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace qpol
