#include "bolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bolab/assign.hpp"

#ifdef BOLAB_HAVE_LAPACKE
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#else
#include <Eigen/Eigenvalues>
#endif
#include <limits>

namespace bolab {

namespace {

void fix_phases(MatC& V) {
  for (int k = 0; k < V.cols(); ++k) {
    int imax = 0;
    double best = 0.0;
    for (int j = 0; j < V.rows(); ++j) {
      const double a = std::abs(V(j, k));
      if (a > best) { best = a; imax = j; }
    }
    const std::complex<double> z = V(imax, k);
    if (std::abs(z) > 0.0) V.col(k) *= std::conj(z) / std::abs(z);
  }
}

double max_residual(const MatC& A, const VecC& w, const MatC& V) {
  double worst = 0.0;
  const MatC R = A * V - V * w.asDiagonal();
  for (int k = 0; k < V.cols(); ++k) worst = std::max(worst, R.col(k).norm());
  return worst;
}

}  // namespace

void HermitianSpectrum::certify(double tol) const {
  if (residual > tol * norm_fro)
    throw std::runtime_error("HermitianSpectrum: residual certificate failed");
  if (ortho_defect > tol)
    throw std::runtime_error("HermitianSpectrum: orthonormality certificate failed");
}

void ComplexSpectrum::certify(double tol) const {
  if (residual > tol * norm_fro)
    throw std::runtime_error("ComplexSpectrum: residual certificate failed");
}

HermitianSpectrum eig_hermitian(const MatC& A) {
  const int n = static_cast<int>(A.rows());
  HermitianSpectrum out;
  out.norm_fro = A.norm();
#ifdef BOLAB_HAVE_LAPACKE
  MatC V = A;
  VecD w(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                  V.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("eig_hermitian: zheevd failed, info=" + std::to_string(info));
  out.alpha = w;
  out.vectors = std::move(V);
#else
  Eigen::SelfAdjointEigenSolver<MatC> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: convergence failure");
  out.alpha = es.eigenvalues();
  out.vectors = es.eigenvectors();
#endif
  fix_phases(out.vectors);
  out.residual = max_residual(A, out.alpha.cast<std::complex<double>>(), out.vectors);
  out.ortho_defect =
      (out.vectors.adjoint() * out.vectors - MatC::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

ComplexSpectrum eig_general(const MatC& C) {
  const int n = static_cast<int>(C.rows());
  ComplexSpectrum out;
  out.norm_fro = C.norm();
  VecC w(n);
  MatC V(n, n);
#ifdef BOLAB_HAVE_LAPACKE
  MatC work = C;
  const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n,
                                 w.data(), nullptr, 1, V.data(), n);
  if (info != 0)
    throw std::runtime_error("eig_general: zgeev failed, info=" + std::to_string(info));
#else
  Eigen::ComplexEigenSolver<MatC> es(C, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_general: convergence failure");
  w = es.eigenvalues();
  V = es.eigenvectors();
#endif
  // sort by (Re, Im) ascending
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&w](int a, int b) {
    if (w(a).real() != w(b).real()) return w(a).real() < w(b).real();
    return w(a).imag() < w(b).imag();
  });
  out.sigma.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.sigma(k) = w(idx[k]);
    out.vectors.col(k) = V.col(idx[k]).normalized();
  }
  fix_phases(out.vectors);
  out.residual = max_residual(C, out.sigma, out.vectors);
  double minsp = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < n; ++k)
    minsp = std::min(minsp, std::abs(out.sigma(k + 1) - out.sigma(k)));
  out.near_defective = (n > 1) && (minsp < 1e-8 * out.norm_fro);
  return out;
}

Velocities alpha_velocities(const HermitianSpectrum& spec, const Ensemble& ens) {
  const int n = ens.N;
  Velocities vel;
  vel.x.resize(n);
  vel.t.resize(n);
  for (int k = 0; k < n; ++k) {
    double vx = 0.0, vt = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a2 = std::norm(spec.vectors(j, k));
      vx += -2.0 * ens.lambda[j] * a2;
      vt += -4.0 * ens.lambda[j] * ens.lambda[j] * a2;
    }
    vel.x(k) = vx;
    vel.t(k) = vt;
  }
  return vel;
}

MuNu mu_nu_from_vectors(const ComplexSpectrum& spec, const Ensemble& ens, double t,
                        double tol) {
  const int n = ens.N;
  MuNu out;
  out.mu.resize(n);
  out.nu.resize(n);
  for (int k = 0; k < n; ++k) {
    double mu = 0.0, nu = 0.0;
    std::complex<double> cross(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const double a2 = std::norm(spec.vectors(j, k));
      mu += -(2.0 * t * ens.lambda[j] + ens.gamma[j]) * a2;
      nu += -0.5 * ens.eps * a2 / ens.lambda[j];
      for (int s = 0; s < n; ++s) {
        if (s == j) continue;
        cross += std::conj(spec.vectors(j, k)) * spec.vectors(s, k) /
                 (ens.lambda[j] - ens.lambda[s]);
      }
    }
    mu += (std::complex<double>(0.0, -ens.eps) * cross).real();
    out.mu(k) = mu;
    out.nu(k) = nu;
    out.worst_mismatch = std::max({out.worst_mismatch,
                                   std::abs(mu - spec.sigma(k).real()),
                                   std::abs(nu - spec.sigma(k).imag())});
  }
  out.ill_conditioned = out.worst_mismatch > tol;
  return out;
}

std::vector<int> track_step(const VecD& alpha_prev, const VecD& vel_prev, double dx,
                            const VecD& alpha_new) {
  const int n = static_cast<int>(alpha_prev.size());
  std::vector<double> cost(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[size_t(i) * n + j] = std::abs(alpha_prev(i) + vel_prev(i) * dx - alpha_new(j));
  return hungarian(cost, n);
}

}  // namespace bolab
