#include "qpol/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpol {

HermitianEigen hermitian_eigen(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (m.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix hermitian_function(const CMatrix& m, const std::function<double(double)>& f) {
  const auto eig = hermitian_eigen(m);
  RVector fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

namespace {

double clamped(double v, double neg_tol, double noise) {
  if (v < -neg_tol) throw std::domain_error("matrix is not positive semidefinite");
  return v <= noise ? 0.0 : v;
}

// Eigenvalues this close to zero are rounding noise of the eigensolver. Their
// square roots would otherwise contribute O(sqrt(eps)) to traces.
double noise_floor(const RVector& values) {
  if (values.size() == 0) return 0.0;
  const double scale = values.cwiseAbs().maxCoeff();
  return static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

CMatrix psd_sqrt(const CMatrix& m, double neg_tol) {
  const auto eig = hermitian_eigen(m);
  const double noise = noise_floor(eig.values);
  RVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) roots[i] = std::sqrt(clamped(eig.values[i], neg_tol, noise));
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double trace_sqrt(const CMatrix& m, double neg_tol) {
  const auto eig = hermitian_eigen(m);
  const double noise = noise_floor(eig.values);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) sum += std::sqrt(clamped(eig.values[i], neg_tol, noise));
  return sum;
}

CMatrix unitary_exp(const CMatrix& generator) {
  const auto eig = hermitian_eigen(generator);
  CVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -eig.values[i]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qpol
