#include "bolab/branch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bolab/fit.hpp"
#include "bolab/interp.hpp"

namespace bolab {

BranchSets classify(const ComplexSpectrum& spec, double eps, double t, double t_b,
                    double Xminus, double Xplus, const ClassifyConfig& cfg) {
  const double delta = eps * std::log(1.0 / eps);
  BranchSets out;
  out.nu_out = cfg.c_out * delta;
  out.nu_split = cfg.c_split * delta;
  out.B_bound = cfg.B_bound;
  const double pad = cfg.caustic_pad_eps * eps;
  for (int k = 0; k < spec.sigma.size(); ++k) {
    const double mu = spec.sigma(k).real(), nu = spec.sigma(k).imag();
    if (nu > out.nu_out && std::abs(mu) <= out.B_bound) {
      out.outliers.push_back(k);
    } else if (t > t_b && nu < out.nu_split && mu > Xminus - pad && mu < Xplus + pad) {
      out.lower.push_back(k);
    } else {
      out.upper.push_back(k);
    }
  }
  if (out.upper.empty())
    throw std::runtime_error("classify: empty upper branch (thresholds misconfigured)");
  return out;
}

SamplingTable sampling_table(const BranchSets& sets, BranchTag tag,
                             const ComplexSpectrum& spec, double eps, double t) {
  const std::vector<int>& idx = (tag == BranchTag::UPPER) ? sets.upper : sets.lower;
  if (idx.empty()) throw std::runtime_error("sampling_table: empty branch");
  SamplingTable tab;
  tab.tag = tag;
  tab.eps = eps;
  tab.t = t;
  tab.scale = (tag == BranchTag::UPPER) ? eps * std::log(1.0 / eps) : eps;
  tab.N_branch = static_cast<int>(idx.size());
  const int n = tab.N_branch;
  tab.y.resize(n);
  tab.mu.resize(n);
  tab.nu.resize(n);
  for (int k = 0; k < n; ++k) {
    tab.y[k] = (k + 0.5) / n;
    tab.mu[k] = spec.sigma(idx[k]).real();
    tab.nu[k] = spec.sigma(idx[k]).imag() / tab.scale;
  }
  for (int k = 0; k + 1 < n; ++k)
    if (!(tab.mu[k] < tab.mu[k + 1])) tab.mu_monotone = false;
  tab.mu_prime.resize(n);
  tab.nu_prime.resize(n);
  for (int k = 0; k + 1 < n; ++k) {
    tab.mu_prime[k] = (tab.mu[k + 1] - tab.mu[k]) * n;
    tab.nu_prime[k] = (tab.nu[k + 1] - tab.nu[k]) * n;
  }
  if (n > 1) {
    tab.mu_prime[n - 1] = tab.mu_prime[n - 2];
    tab.nu_prime[n - 1] = tab.nu_prime[n - 2];
  }
  return tab;
}

EdgeSample edge_sample(const SamplingTable& tab) {
  EdgeSample e;
  e.eps = tab.eps;
  e.mu_first = tab.mu.front();
  e.mu_last = tab.mu.back();
  e.nu_first = tab.nu.front() * tab.scale;
  e.nu_last = tab.nu.back() * tab.scale;
  return e;
}

ExponentFit fit_exponents(const std::vector<EdgeSample>& sweep) {
  if (sweep.size() < 4)
    throw std::invalid_argument("fit_exponents: need >= 4 epsilon values");
  std::vector<double> le, m1, mN, n1, nN;
  for (const EdgeSample& s : sweep) {
    const double delta = s.eps * std::log(1.0 / s.eps);
    le.push_back(std::log(s.eps));
    m1.push_back(std::log(std::abs(s.mu_first)));
    mN.push_back(std::log(s.mu_last));
    n1.push_back(std::log(s.nu_first / delta));
    nN.push_back(std::log(s.nu_last / delta));
  }
  const LineFit fq_m = fit_line(le, m1), fq_p = fit_line(le, mN);
  const LineFit fr_m = fit_line(le, n1), fr_p = fit_line(le, nN);
  ExponentFit out;
  out.q_minus = -fq_m.slope;
  out.q_plus = -fq_p.slope;
  out.r_minus = -fr_m.slope;
  out.r_plus = -fr_p.slope;
  out.r2_q_minus = fq_m.r2;
  out.r2_q_plus = fq_p.r2;
  out.r2_r_minus = fr_m.r2;
  out.r2_r_plus = fr_p.r2;
  out.poor_fit = std::min({fq_m.r2, fq_p.r2, fr_m.r2, fr_p.r2}) < 0.99;
  return out;
}

namespace {

Pchip mu_interp(const SamplingTable& tab) { return Pchip(tab.y, tab.mu); }

double invert_mu(const SamplingTable& tab, double x) {
  if (x < tab.mu.front() || x > tab.mu.back())
    throw std::domain_error("modulation: x outside the branch mu-range");
  return mu_interp(tab).invert(x);
}

}  // namespace

double psi_from_table(const SamplingTable& tab, double x) {
  const Pchip mi = mu_interp(tab);
  if (x < tab.mu.front() || x > tab.mu.back())
    throw std::domain_error("modulation: x outside the branch mu-range");
  const double y = mi.invert(x);
  const double mup = mi.deriv(y);
  return 2.0 * M_PI * tab.eps * tab.N_branch / mup;
}

double nu_at_x(const SamplingTable& tab, double x) {
  const double y = invert_mu(tab, x);
  return Pchip(tab.y, tab.nu)(y);
}

double phase_p_x0(const SamplingTable& lower, double x0) {
  int k0 = 0;
  double best = std::abs(lower.mu[0] - x0);
  for (int k = 1; k < lower.N_branch; ++k) {
    const double d = std::abs(lower.mu[k] - x0);
    if (d < best) { best = d; k0 = k; }
  }
  const double mup = mu_interp(lower).deriv(lower.y[k0]);
  return (x0 - lower.mu[k0]) * lower.N_branch / mup;
}

WhithamFields modulation_fields(const SamplingTable& upper, const SamplingTable& lower,
                                double x, double t) {
  WhithamFields f;
  f.psi_U = psi_from_table(upper, x);
  f.psi_L = psi_from_table(lower, x);
  f.phi_L = f.psi_L * nu_at_x(lower, x);
  f.r = std::exp(-f.phi_L);
  f.p_x0 = phase_p_x0(lower, x);
  return f;
}

PeriodicProfile periodic_profile(const SamplingTable& upper, const SamplingTable& lower,
                                 double x0, double t, double eps,
                                 const std::vector<double>& xs) {
  PeriodicProfile out;
  const double psiL = psi_from_table(lower, x0);
  const double phiL = psiL * nu_at_x(lower, x0);
  out.p_x0 = phase_p_x0(lower, x0);
  out.phase_anomaly = std::abs(out.p_x0) > 0.55;
  const double sh = std::sinh(phiL), ch = std::cosh(phiL);
  out.x = xs;
  out.u.resize(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const double psiU = psi_from_table(upper, xs[i]);
    const double phase = psiL / eps * (xs[i] - x0) + 2.0 * M_PI * out.p_x0;
    out.u[i] = psiU + psiL * sh / (ch - std::cos(phase));
  }
  out.crest = psi_from_table(upper, x0) + psiL * sh / (ch - 1.0);
  return out;
}

Decomposition diagnostic_decompose(const ComplexSpectrum& spec, const BranchSets& sets,
                                   double eps, double x) {
  auto part = [&spec, eps, x](const std::vector<int>& idx) {
    double s = 0.0;
    for (int k : idx) {
      const double dx = x - spec.sigma(k).real();
      const double nu = spec.sigma(k).imag();
      s += 2.0 * eps * nu / (dx * dx + nu * nu);
    }
    return s;
  };
  return {part(sets.upper), part(sets.lower), part(sets.outliers)};
}

double comb_sum_partial(double omega, double tau, long jmax) {
  double s = 1.0 / (1.0 + tau * tau);
  for (long j = jmax; j >= 1; --j) {  // small terms first
    const double zp = tau + double(j) / omega;
    const double zm = tau - double(j) / omega;
    s += 1.0 / (1.0 + zp * zp) + 1.0 / (1.0 + zm * zm);
  }
  return s;
}

double comb_sum(double omega, double tau, long jmax) {
  double s = comb_sum_partial(omega, tau, jmax);
  // Euler-Maclaurin estimate of the two discarded tails
  const double a = double(jmax + 1);
  for (int sgn : {+1, -1}) {
    const double z = tau + sgn * a / omega;
    const double g = 1.0 / (1.0 + z * z);
    const double gp = -2.0 * z * (sgn / omega) * g * g;
    const double integral = (sgn > 0) ? omega * (M_PI / 2 - std::atan(z))
                                      : omega * (M_PI / 2 + std::atan(z));
    s += integral + 0.5 * g - gp / 12.0;
  }
  return s;
}

double comb_closed_form(double omega, double tau) {
  const double w = 2.0 * M_PI * omega;
  return M_PI * omega * std::sinh(w) / (std::cosh(w) - std::cos(w * tau));
}

}  // namespace bolab
