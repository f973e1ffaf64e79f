#pragma once

#include <functional>

#include "qpol/fock.hpp"

namespace qpol {

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

/// Eigendecomposition of the Hermitian part of `m`.
HermitianEigen hermitian_eigen(const CMatrix& m);

/// V f(Λ) V† for Hermitian `m`.
CMatrix hermitian_function(const CMatrix& m, const std::function<double(double)>& f);

/// Square root of a numerically PSD matrix. Eigenvalues in [-neg_tol, 0), and
/// positive ones within rounding noise of zero (n·eps·max|μ|), are set to zero;
/// anything below -neg_tol throws std::domain_error.
CMatrix psd_sqrt(const CMatrix& m, double neg_tol = 1e-10);

/// Σ sqrt(max(μ_i, 0)) over eigenvalues of PSD `m`, same clamping rule as psd_sqrt.
double trace_sqrt(const CMatrix& m, double neg_tol = 1e-10);

/// exp(-i H) for Hermitian H.
CMatrix unitary_exp(const CMatrix& generator);

double max_abs(const CMatrix& m);

}  // namespace qpol
