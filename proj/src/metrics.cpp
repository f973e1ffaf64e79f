#include "qpol/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpol/linalg.hpp"

namespace qpol {

namespace {

constexpr double kSupportCutoff = 1e-12;

void require_same_shape(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) throw std::invalid_argument("density matrices have different dimensions");
}

}  // namespace

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_shape(rho, sigma);
  return (rho.matrix() - sigma.matrix()).squaredNorm();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_shape(rho, sigma);
  const CMatrix root = psd_sqrt(sigma.matrix());
  const double t = trace_sqrt(root * rho.matrix() * root);
  return std::clamp(t * t, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_shape(rho, sigma);
  const auto er = hermitian_eigen(rho.matrix());
  const auto es = hermitian_eigen(sigma.matrix());

  double entropy_term = 0.0;  // Tr ρ ln ρ
  for (Eigen::Index i = 0; i < er.values.size(); ++i) {
    const double r = er.values[i];
    if (r > kSupportCutoff) entropy_term += r * std::log(r);
  }

  double cross_term = 0.0;  // Tr ρ ln σ
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const CVector v = es.vectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double s = es.values[j];
    if (s <= kSupportCutoff) {
      if (weight > kSupportCutoff) throw std::domain_error("relative entropy infinite");
      continue;
    }
    cross_term += weight * std::log(s);
  }
  return entropy_term - cross_term;
}

int discrete_distance(const DensityMatrix& rho, const DensityMatrix& sigma, double tol) {
  require_same_shape(rho, sigma);
  return max_abs(rho.matrix() - sigma.matrix()) <= tol ? 0 : 1;
}

}  // namespace qpol
