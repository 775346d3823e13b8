#include "bolab/reconstruct.hpp"

#include <Eigen/LU>
#include <limits>
#include <cmath>
#include <stdexcept>

namespace bolab {

double u_from_alphas(const HermitianSpectrum& spec, const Velocities& vel, double eps) {
  double u = 0.0;
  for (int k = 0; k < spec.alpha.size(); ++k)
    u += 2.0 * eps * eps * vel.x(k) / (spec.alpha(k) * spec.alpha(k) + eps * eps);
  return u;
}

double u_from_alphas_truncated(const HermitianSpectrum& spec, const Velocities& vel,
                               double eps, double cutoff) {
  double u = 0.0;
  for (int k = 0; k < spec.alpha.size(); ++k) {
    if (std::abs(spec.alpha(k)) >= cutoff) continue;
    u += 2.0 * eps * eps * vel.x(k) / (spec.alpha(k) * spec.alpha(k) + eps * eps);
  }
  return u;
}

double antiderivative_I(const HermitianSpectrum& spec, double eps) {
  double s = 0.0;
  for (int k = 0; k < spec.alpha.size(); ++k) s += std::atan(spec.alpha(k) / eps);
  return 2.0 * eps * s;
}

double u_from_sigmas(const ComplexSpectrum& spec, double eps, double x) {
  double u = 0.0;
  for (int k = 0; k < spec.sigma.size(); ++k) {
    const double dx = x - spec.sigma(k).real();
    const double nu = spec.sigma(k).imag();
    u += 2.0 * eps * nu / (dx * dx + nu * nu);
  }
  return u;
}

double u_from_sigmas(const std::vector<double>& mu, const std::vector<double>& nu,
                     double eps, double x) {
  double u = 0.0;
  for (size_t k = 0; k < mu.size(); ++k) {
    const double dx = x - mu[k];
    u += 2.0 * eps * nu[k] / (dx * dx + nu[k] * nu[k]);
  }
  return u;
}

double hilbert_u(const ComplexSpectrum& spec, double eps, double x) {
  double h = 0.0;
  for (int k = 0; k < spec.sigma.size(); ++k) {
    const double dx = x - spec.sigma(k).real();
    const double nu = spec.sigma(k).imag();
    h += -2.0 * eps * dx / (dx * dx + nu * nu);
  }
  return h;
}

namespace {

// Im log det(I + i A(x,t)/eps) accumulated along the LU diagonal, each pivot
// on the principal branch.  The absolute value is branch-dependent; only
// wrapped differences are meaningful.
double im_logdet(const Ensemble& ens, double x, double t, double eps) {
  MatC m = build_A(ens, x, t);
  m *= std::complex<double>(0.0, 1.0 / eps);
  m += MatC::Identity(ens.N, ens.N);
  Eigen::PartialPivLU<MatC> lu(m);
  double im = 0.0;
  const auto& U = lu.matrixLU();
  for (int j = 0; j < ens.N; ++j) {
    const std::complex<double> p = U(j, j);
    if (std::abs(p) == 0.0) throw std::runtime_error("im_logdet: singular pivot");
    im += std::arg(p);
  }
  return im;
}

double wrap_pi(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace

double u_from_logdet_fd(const Ensemble& ens, double x, double t, double h) {
  if (ens.N > 64) throw std::invalid_argument("u_from_logdet_fd: N > 64");
  for (int attempt = 0; attempt < 5; ++attempt) {
    const double hh = h * (1.0 + 0.13 * attempt);
    try {
      const double d = im_logdet(ens, x + hh, t, ens.eps) -
                       im_logdet(ens, x - hh, t, ens.eps);
      return 2.0 * ens.eps * wrap_pi(d) / (2.0 * hh);
    } catch (const std::runtime_error&) {
      continue;  // jitter h and retry on a singular pivot
    }
  }
  throw std::runtime_error("u_from_logdet_fd: persistent singular LU pivot");
}

namespace {

VecC cm_rhs(const VecC& s, double eps) {
  const int n = static_cast<int>(s.size());
  VecC ds(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> tot(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      tot += std::complex<double>(0.0, 2.0 * eps) / (s(k) - std::conj(s(j)));
      if (j != k) tot -= std::complex<double>(0.0, 2.0 * eps) / (s(k) - s(j));
    }
    ds(k) = tot;
  }
  return ds;
}

double min_pair_distance(const VecC& s) {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < s.size(); ++k)
    for (int j = k + 1; j < s.size(); ++j)
      m = std::min(m, std::abs(s(k) - s(j)));
  return m;
}

}  // namespace

CmTrajectory cm_flow(const Ensemble& ens, const VecC& sigma0, double t0, double t1,
                     double tol, int max_steps) {
  // Dormand-Prince 5(4) coefficients
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  if (min_pair_distance(sigma0) < 1e-10)
    throw std::runtime_error("cm_flow: coincident initial eigenvalues");
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double eps = ens.eps;
  CmTrajectory out;
  out.times.push_back(t0);
  out.states.push_back(sigma0);
  double t = t0;
  VecC s = sigma0;
  VecC k1 = cm_rhs(s, eps);
  double h = dir * std::min(1e-3, std::abs(t1 - t0));
  int consecutive_rejects = 0;
  while (dir * (t1 - t) > 1e-15) {
    if (dir * (t + h - t1) > 0) h = t1 - t;
    const VecC k2v = cm_rhs(s + h * a21 * k1, eps);
    const VecC k3v = cm_rhs(s + h * (a31 * k1 + a32 * k2v), eps);
    const VecC k4v = cm_rhs(s + h * (a41 * k1 + a42 * k2v + a43 * k3v), eps);
    const VecC k5v = cm_rhs(s + h * (a51 * k1 + a52 * k2v + a53 * k3v + a54 * k4v), eps);
    const VecC k6v =
        cm_rhs(s + h * (a61 * k1 + a62 * k2v + a63 * k3v + a64 * k4v + a65 * k5v), eps);
    const VecC snew = s + h * (b1 * k1 + b3 * k3v + b4 * k4v + b5 * k5v + b6 * k6v);
    const VecC k7v = cm_rhs(snew, eps);
    const VecC errv =
        h * (e1 * k1 + e3 * k3v + e4 * k4v + e5 * k5v + e6 * k6v + e7 * k7v);
    double errnorm = 0.0;
    for (int i = 0; i < s.size(); ++i) {
      const double sc = tol + tol * std::max(std::abs(s(i)), std::abs(snew(i)));
      errnorm = std::max(errnorm, std::abs(errv(i)) / sc);
    }
    const bool collision = min_pair_distance(snew) < 1e-10;
    if (errnorm <= 1.0 && !collision) {
      t += h;
      s = snew;
      k1 = k7v;  // FSAL
      out.times.push_back(t);
      out.states.push_back(s);
      ++out.steps_accepted;
      consecutive_rejects = 0;
    } else {
      ++out.steps_rejected;
      if (collision && ++consecutive_rejects > 40)
        throw std::runtime_error("cm_flow: eigenvalue near-collision below 1e-10");
    }
    const double fac = collision ? 0.3
                                 : std::min(5.0, std::max(0.2, 0.9 * std::pow(
                                       std::max(errnorm, 1e-10), -0.2)));
    h *= fac;
    if (out.steps_accepted + out.steps_rejected > max_steps)
      throw std::runtime_error("cm_flow: step budget exhausted");
  }
  return out;
}

}  // namespace bolab
