#pragma once

#include <complex>
#include <vector>

#include "bolab/ensemble.hpp"

namespace bolab {

// Full Hermitian eigendecomposition with residual certificate.
// alpha ascending; columns of `vectors` orthonormal; phase fixed so each
// column's largest-modulus entry is real positive.
struct HermitianSpectrum {
  VecD alpha;
  MatC vectors;
  double residual = 0.0;       // max_k ||A v_k - alpha_k v_k||_2
  double ortho_defect = 0.0;   // max |V^H V - I|
  double norm_fro = 0.0;

  void certify(double tol = 1e-10) const;
};

// General complex spectrum, sorted by (Re, Im) ascending, unit right
// eigenvectors, residual-certified.
struct ComplexSpectrum {
  VecC sigma;
  MatC vectors;
  double residual = 0.0;
  double norm_fro = 0.0;
  bool near_defective = false;  // min eigenvalue spacing < 1e-8 ||C||

  void certify(double tol = 1e-10) const;
};

HermitianSpectrum eig_hermitian(const MatC& A);
ComplexSpectrum eig_general(const MatC& C);

// Eigenvalue derivatives from eigenvectors:
//   d alpha_k/dx = sum_j (-2 lambda_j) |v_kj|^2,
//   d alpha_k/dt = sum_j (-4 lambda_j^2) |v_kj|^2.
struct Velocities {
  VecD x;
  VecD t;
};
Velocities alpha_velocities(const HermitianSpectrum& spec, const Ensemble& ens);

// mu_k, nu_k reconstructed from eigenvectors via the Rayleigh identity
// (real part from B, imaginary part from eps D^{-2}); checked against
// Re/Im sigma_k to `tol`.
struct MuNu {
  VecD mu;
  VecD nu;
  bool ill_conditioned = false;
  double worst_mismatch = 0.0;
};
MuNu mu_nu_from_vectors(const ComplexSpectrum& spec, const Ensemble& ens, double t,
                        double tol = 1e-8);

// Track eigenvalue curve identities across an x-sweep step: matches the
// predicted positions alpha_prev + vel_prev * dx to the new sorted values by
// optimal assignment; returns perm with new_of_old[i] = index into alpha_new.
std::vector<int> track_step(const VecD& alpha_prev, const VecD& vel_prev, double dx,
                            const VecD& alpha_new);

}  // namespace bolab
