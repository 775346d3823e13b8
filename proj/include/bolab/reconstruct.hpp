#pragma once

#include <complex>
#include <vector>

#include "bolab/ensemble.hpp"
#include "bolab/spectral.hpp"

namespace bolab {

enum class Route { ALPHA, SIGMA, LOGDET };

// u(x,t) = sum_k 2 eps^2 alpha_x,k / (alpha_k^2 + eps^2)
double u_from_alphas(const HermitianSpectrum& spec, const Velocities& vel, double eps);

// Same sum restricted to |alpha_k| < cutoff (the discarded terms change u by
// at most 4 L N eps^2 / cutoff^2).
double u_from_alphas_truncated(const HermitianSpectrum& spec, const Velocities& vel,
                               double eps, double cutoff);

// antiderivative I = 2 eps sum_k arctan(alpha_k / eps), principal branch
double antiderivative_I(const HermitianSpectrum& spec, double eps);

// u(x,t) = sum_k 2 eps nu_k / ((x-mu_k)^2 + nu_k^2) and its Hilbert transform
double u_from_sigmas(const ComplexSpectrum& spec, double eps, double x);
double hilbert_u(const ComplexSpectrum& spec, double eps, double x);
double u_from_sigmas(const std::vector<double>& mu, const std::vector<double>& nu,
                     double eps, double x);

// Small-N cross-check: u ~ eps * Im[log det(I + i A(x+h)/eps) -
// log det(I + i A(x-h)/eps)] / h with the branch fixed by wrapping the
// difference of diagonal-accumulated LU logs into (-pi, pi].
double u_from_logdet_fd(const Ensemble& ens, double x, double t, double h);

// Calogero-Moser flow of the complex eigenvalues:
//   sigma_k' = sum_j 2 i eps/(sigma_k - conj(sigma_j))
//            - sum_{j != k} 2 i eps/(sigma_k - sigma_j).
// Adaptive embedded Dormand-Prince 5(4).  Throws on near-collision
// (|sigma_k - sigma_j| < 1e-10) persisting through step rejection.
struct CmTrajectory {
  std::vector<double> times;
  std::vector<VecC> states;
  int steps_accepted = 0;
  int steps_rejected = 0;
};
CmTrajectory cm_flow(const Ensemble& ens, const VecC& sigma0, double t0, double t1,
                     double tol, int max_steps = 2000000);

}  // namespace bolab
