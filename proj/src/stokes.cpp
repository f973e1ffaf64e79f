#include "qpol/stokes.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>

#include "qpol/linalg.hpp"

namespace qpol {

namespace {

// J+ |N,k⟩ = sqrt((k+1)(N-k)) |N,k+1⟩; the Stokes operators are S = 2J.
CMatrix ladder_up(int N) {
  CMatrix up = CMatrix::Zero(N + 1, N + 1);
  for (int k = 0; k < N; ++k) up(k + 1, k) = std::sqrt(static_cast<double>((k + 1) * (N - k)));
  return up;
}

CMatrix build(StokesOp which, int cutoff) {
  const int d = dimension(cutoff);
  CMatrix s = CMatrix::Zero(d, d);
  for (int N = 0; N <= cutoff; ++N) s.block(manifold_offset(N), manifold_offset(N), N + 1, N + 1) = stokes_block(which, N);
  return s;
}

}  // namespace

CMatrix stokes_block(StokesOp which, int N) {
  if (N < 0) throw std::out_of_range("negative manifold index");
  const CMatrix up = ladder_up(N);
  const Complex i(0.0, 1.0);
  switch (which) {
    case StokesOp::S0:
      return CMatrix::Identity(N + 1, N + 1) * static_cast<double>(N);
    case StokesOp::S1:
      // S1 = (S+ + S-)/2 with S± = 2 J±
      return up + up.adjoint();
    case StokesOp::S2:
      return -i * (up - up.adjoint());
    case StokesOp::S3: {
      CMatrix s3 = CMatrix::Zero(N + 1, N + 1);
      for (int k = 0; k <= N; ++k) s3(k, k) = static_cast<double>(2 * k - N);
      return s3;
    }
  }
  throw std::invalid_argument("unknown Stokes operator");
}

const CMatrix& stokes_matrix(StokesOp which, int cutoff) {
  if (cutoff < 0) throw std::out_of_range("negative cutoff");
  static std::shared_mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const CMatrix>> cache;
  const auto key = std::make_pair(static_cast<int>(which), cutoff);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto matrix = std::make_unique<const CMatrix>(build(which, cutoff));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(key, std::move(matrix));
  return *it->second;
}

StokesMoments stokes_moments(const DensityMatrix& rho) {
  // Stokes operators are block-diagonal, so only the manifold blocks of ρ enter.
  StokesMoments out;
  const StokesOp ops[3] = {StokesOp::S1, StokesOp::S2, StokesOp::S3};
  double second[3] = {0.0, 0.0, 0.0};
  for (int N = 0; N <= rho.cutoff(); ++N) {
    const CMatrix b = block(rho, N, N);
    out.s0 += N * b.trace().real();
    for (int a = 0; a < 3; ++a) {
      const CMatrix s = stokes_block(ops[a], N);
      const CMatrix bs = b * s;
      out.svec[a] += bs.trace().real();
      second[a] += (bs * s).trace().real();
    }
  }
  for (int a = 0; a < 3; ++a) out.variance_sum += second[a] - out.svec[a] * out.svec[a];
  return out;
}

StokesMoments stokes_moments(const PureState& psi) {
  // Works manifold by manifold; the operators are block-diagonal.
  StokesMoments out;
  const StokesOp ops[3] = {StokesOp::S1, StokesOp::S2, StokesOp::S3};
  double second[3] = {0.0, 0.0, 0.0};
  for (int N = 0; N <= psi.cutoff(); ++N) {
    const CVector v = psi.amplitudes().segment(manifold_offset(N), N + 1);
    out.s0 += N * v.squaredNorm();
    for (int a = 0; a < 3; ++a) {
      const CVector sv = stokes_block(ops[a], N) * v;
      out.svec[a] += v.dot(sv).real();
      second[a] += sv.squaredNorm();
    }
  }
  for (int a = 0; a < 3; ++a) out.variance_sum += second[a] - out.svec[a] * out.svec[a];
  return out;
}

namespace {

double semiclassical_from(const StokesMoments& moments) {
  if (moments.s0 <= 1e-14) throw std::domain_error("semiclassical degree undefined for vacuum");
  return moments.svec.norm() / moments.s0;
}

}  // namespace

double semiclassical_degree(const DensityMatrix& rho) { return semiclassical_from(stokes_moments(rho)); }

double semiclassical_degree(const PureState& psi) { return semiclassical_from(stokes_moments(psi)); }

CMatrix polarization_unitary(const Eigen::Vector3d& axis, double angle, double phase0, int cutoff) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw std::invalid_argument("rotation axis must be a unit vector");
  if (cutoff < 0) throw std::out_of_range("negative cutoff");
  const int d = dimension(cutoff);
  CMatrix u = CMatrix::Zero(d, d);
  for (int N = 0; N <= cutoff; ++N) {
    // S0 commutes with S, so the two exponentials combine into one generator.
    const CMatrix generator = 0.5 * angle *
                                  (axis[0] * stokes_block(StokesOp::S1, N) + axis[1] * stokes_block(StokesOp::S2, N) +
                                   axis[2] * stokes_block(StokesOp::S3, N)) +
                              phase0 * stokes_block(StokesOp::S0, N);
    u.block(manifold_offset(N), manifold_offset(N), N + 1, N + 1) = unitary_exp(generator);
  }
  return u;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& unitary) {
  if (unitary.rows() != rho.dimension() || unitary.cols() != rho.dimension())
    throw std::invalid_argument("unitary dimension does not match state");
  CMatrix out = unitary * rho.matrix() * unitary.adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(rho.cutoff(), std::move(out));
}

}  // namespace qpol
