#include "bolab/microlocal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <limits>

#include "bolab/quad.hpp"
#include "bolab/roots.hpp"

namespace bolab {

VelocityPrediction velocity_predictions(const BurgersSolver& burgers, double x0, double t,
                                        double eps, int p) {
  const BurgersBranches b = burgers.branches(x0, t);
  VelocityPrediction out;
  out.triple = b.triple;
  out.v_slow = (2.0 * p - 1.0) * b.u0B() / (p * std::log(1.0 / eps));
  if (b.triple)
    out.v_fast = 2.0 * (b.u2B() - b.u1B()) /
                 std::log((b.u2B() - b.u0B()) / (b.u1B() - b.u0B()));
  return out;
}

SmallEigenSet small_eigs(const HermitianSpectrum& spec, const Velocities& vel,
                         const BurgersSolver& burgers, double x, double t, double eps,
                         double r, int p) {
  SmallEigenSet out;
  out.cutoff = std::pow(eps, r);
  const VelocityPrediction pred = velocity_predictions(burgers, x, t, eps, p);
  out.v_split = pred.triple ? std::sqrt(pred.v_slow * pred.v_fast) : 0.0;
  for (int k = 0; k < spec.alpha.size(); ++k) {
    if (std::abs(spec.alpha(k)) > out.cutoff) continue;
    SmallEig e;
    e.index = k;
    e.alpha = spec.alpha(k);
    e.alpha_x = vel.x(k);
    if (!pred.triple) {
      e.cls = EigClass::SLOW;
    } else if (std::abs(e.alpha_x - out.v_split) <= 0.25 * out.v_split) {
      e.cls = EigClass::AMBIGUOUS;
    } else {
      e.cls = (e.alpha_x < out.v_split) ? EigClass::SLOW : EigClass::FAST;
    }
    out.entries.push_back(e);
  }
  return out;
}

namespace {

// window bounds of the indicator in the G integrand
inline void ab_of_lambda(const Profile& pr, double lam, double x, double t, double& a,
                         double& b) {
  const auto [xm, xp] = pr.turning_points(lam);
  a = -2.0 * lam * (x + 2.0 * lam * t - xp);
  b = -2.0 * lam * (x + 2.0 * lam * t - xm);
}

}  // namespace

double density_G(const Profile& profile, double alpha, double x, double t) {
  if (std::abs(alpha) < 1e-300)
    return std::numeric_limits<double>::infinity();  // log divergence at alpha = 0
  const double L = profile.L();
  const int p = profile.decay_p();
  const double q = 2.0 * p / (2.0 * p - 1.0);
  const double s_max = std::pow(L, 1.0 / q);
  // inside(lambda) > 0 exactly where a < alpha < b
  auto inside = [&profile, alpha, x, t](double lam) {
    double a, b;
    ab_of_lambda(profile, lam, x, t, a, b);
    return std::min(alpha - a, b - alpha);
  };
  const int n = 4096;
  double total = 0.0;
  double lam_prev = -std::pow(s_max * (1.0 - 1e-12), q);
  double seg_lo = lam_prev;  // open segment start, valid when in_seg
  bool in_seg = inside(lam_prev) > 0.0;
  for (int i = n - 1; i >= 1; --i) {
    const double lam = -std::pow(s_max * double(i) / n, q);
    if ((inside(lam) > 0.0) != in_seg) {
      const double edge = brent_root(inside, lam_prev, lam, 1e-14);
      if (in_seg) total += std::log(std::abs(edge) / std::abs(seg_lo));
      else seg_lo = edge;
      in_seg = !in_seg;
    }
    lam_prev = lam;
  }
  if (in_seg) {
    // the indicator must close before lambda = 0 (at eta(alpha)); the scan
    // grid may be too coarse to see it, so close by a bracketed solve
    const double edge = brent_root(inside, lam_prev, -1e-280, 1e-15);
    total += std::log(std::abs(edge) / std::abs(seg_lo));
  }
  return -total / (4.0 * M_PI);
}

double density_G_window(const Profile& profile, double a1, double a2, double x, double t) {
  if (a2 < a1) std::swap(a1, a2);
  const double L = profile.L();
  const int p = profile.decay_p();
  const double q = 2.0 * p / (2.0 * p - 1.0);
  const double s_max = std::pow(L, 1.0 / q);
  auto integrand = [&profile, a1, a2, x, t, q](double s) {
    if (s <= 0.0) return 0.0;
    const double lam = -std::pow(s, q);
    if (lam <= -profile.L() || lam >= 0.0) return 0.0;
    double a, b;
    ab_of_lambda(profile, lam, x, t, a, b);
    const double ov = std::min(a2, b) - std::max(a1, a);
    if (ov <= 0.0) return 0.0;
    return ov * q / s;
  };
  return integrate(integrand, 0.0, s_max * (1.0 - 1e-12), 1e-10, 1e-9) / (4.0 * M_PI);
}

double eta_root(const Profile& profile, double alpha, double x, double t) {
  if (alpha == 0.0) return 0.0;
  const int p = profile.decay_p();
  const double K = std::pow(1.0 / (std::pow(2.0, 2.0 * p) * profile.decay_C()),
                            1.0 / (2.0 * p - 1.0));
  const double guess = -K * std::pow(std::abs(alpha), 2.0 * p / (2.0 * p - 1.0));
  auto g = [&profile, alpha, x, t](double eta) {
    return profile.eval_u0(alpha / (2.0 * eta) + x + 2.0 * eta * t) + eta;
  };
  double lo = guess * 8.0, hi = guess / 8.0;
  for (int grow = 0; grow < 40 && g(lo) * g(hi) > 0.0; ++grow) {
    lo *= 2.0;
    hi *= 0.5;
  }
  if (g(lo) * g(hi) > 0.0) throw std::runtime_error("eta_root: bracketing failed");
  return brent_root(g, lo, hi, 1e-15);
}

double density_G_log_coefficient(int p) {
  return (2.0 * p) / (2.0 * p - 1.0) / (4.0 * M_PI);
}

double sawtooth_U(double theta) {
  double r = std::fmod(theta, 2.0 * M_PI);
  if (r < 0.0) r += 2.0 * M_PI;
  if (r == 0.0) return -M_PI;  // jump point convention U(0+) side
  return r - M_PI;
}

double eikonal_Sprime(const LambdaMap& map, double y, double x, double t) {
  const double lam = map.lambda_of_y(y);
  const double F = map.profile().density_F(lam);
  const double gamma = map.profile().phase_gamma(lam);
  const double arg = (x + 2.0 * lam * t + gamma) / F;
  if (std::abs(arg) >= M_PI)
    throw std::domain_error("eikonal_Sprime: y not admissible at this (x,t)");
  if (arg > 0.0) return arg - M_PI;
  if (arg < 0.0) return arg + M_PI;
  return -M_PI;
}

std::vector<std::pair<double, double>> admissible_y_intervals(const LambdaMap& map,
                                                              const BurgersSolver& burgers,
                                                              double x, double t) {
  const BurgersBranches b = burgers.branches(x, t);
  std::vector<std::pair<double, double>> out;
  if (b.triple)
    out.push_back({map.y_of_lambda(-b.u2B()), map.y_of_lambda(-b.u1B())});
  out.push_back({map.y_of_lambda(-b.u0B()), map.M()});
  return out;
}

std::vector<AmplitudeFit> wkb_amplitude_fit(const Eigen::Ref<const VecC>& v,
                                            const Ensemble& ens, const LambdaMap& map,
                                            const std::vector<std::pair<double, double>>& intervals) {
  std::vector<AmplitudeFit> out;
  for (const auto& [ylo, yhi] : intervals) {
    AmplitudeFit fit;
    double sw = 0.0, sphiw = 0.0, sphi2 = 0.0;
    std::vector<double> w2s, phis;
    for (int j = 0; j < ens.N; ++j) {
      const double y = ens.eps * (j + 0.5);
      if (y < ylo || y > yhi) continue;
      const double w2 = std::norm(v(j));
      const double phi = map.dlambda_dy(y) / (-map.lambda_of_y(y));
      w2s.push_back(w2);
      phis.push_back(phi);
      sw += w2;
      sphiw += phi * w2;
      sphi2 += phi * phi;
      fit.peak = std::max(fit.peak, w2);
    }
    fit.n_points = static_cast<int>(w2s.size());
    fit.norm_fraction = sw;
    if (fit.n_points < 8) {
      fit.skipped = true;
      out.push_back(fit);
      continue;
    }
    const double a02 = std::max(sphiw / sphi2, 0.0);
    fit.a0 = std::sqrt(a02);
    double ss = 0.0;
    for (size_t i = 0; i < w2s.size(); ++i) {
      const double e = w2s[i] - a02 * phis[i];
      ss += e * e;
    }
    fit.rms = std::sqrt(ss / w2s.size());
    out.push_back(fit);
  }
  return out;
}

PhaseDeviation eikonal_phase_deviation(const Eigen::Ref<const VecC>& v, const Ensemble& ens,
                                       const LambdaMap& map, double x, double t,
                                       std::pair<double, double> interval) {
  PhaseDeviation out;
  double acc_signed = 0.0, acc_abs = 0.0;
  for (int j = 0; j + 1 < ens.N; ++j) {
    const double y = ens.eps * (j + 0.5);
    const double ynext = ens.eps * (j + 1.5);
    if (y < interval.first || ynext > interval.second) continue;
    if (std::abs(v(j)) == 0.0 || std::abs(v(j + 1)) == 0.0) continue;
    double sp;
    try {
      sp = eikonal_Sprime(map, y + 0.5 * ens.eps, x, t);
    } catch (const std::domain_error&) {
      continue;
    }
    double d = std::arg(v(j + 1) / v(j)) - sp;
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    acc_signed += d;
    acc_abs += std::abs(d);
    ++out.n_pairs;
  }
  if (out.n_pairs > 0) {
    out.mean_signed = acc_signed / out.n_pairs;
    out.mean_abs = acc_abs / out.n_pairs;
  }
  return out;
}

std::vector<OrbitCurve> orbit(const Profile& profile, const BurgersSolver& burgers,
                              double x, double t, int n_per_interval) {
  const BurgersBranches b = burgers.branches(x, t);
  std::vector<std::pair<double, double>> lam_ranges;
  if (b.triple) lam_ranges.push_back({-b.u2B(), -b.u1B()});
  lam_ranges.push_back({-b.u0B(), 0.0});
  std::vector<OrbitCurve> out;
  for (const auto& [llo, lhi] : lam_ranges) {
    OrbitCurve c;
    c.lambda_lo = llo;
    c.lambda_hi = lhi;
    for (int i = 0; i < n_per_interval; ++i) {
      // midpoint-offset grid keeps clear of the interval ends, where F or the
      // turning-point solve degenerates
      const double lam = llo + (lhi - llo) * (i + 0.5) / n_per_interval;
      if (lam >= 0.0 || lam <= -profile.L()) continue;
      const double F = profile.density_F(lam);
      const double th =
          M_PI + (x + 2.0 * lam * t + profile.phase_gamma(lam)) / F;
      c.lambda.push_back(lam);
      c.theta.push_back(th);
    }
    out.push_back(std::move(c));
  }
  return out;
}

BSPrediction bohr_sommerfeld(const Profile& profile, const LambdaMap& map,
                             const BurgersSolver& burgers, double x0, double t,
                             double eps) {
  const BurgersBranches b = burgers.branches(x0, t);
  if (!b.triple)
    throw std::domain_error("bohr_sommerfeld: (x0,t) not in the triple-valued region");
  if (b.degenerate) throw std::runtime_error("bohr_sommerfeld: caustic proximity");
  BSPrediction out;
  out.f_plus = b.u2B() - b.u1B();
  out.f_minus = b.u0B();
  out.spacing_fast = 2.0 * M_PI * eps / out.f_plus;
  out.spacing_slow = 2.0 * M_PI * eps / out.f_minus;

  auto theta_at = [&](double lam) {
    // snap the endpoint longitude to {0, pi, 2pi}
    if (lam >= -1e-13) return M_PI;
    const double th = M_PI + (x0 + 2.0 * lam * t + profile.phase_gamma(lam)) /
                                 profile.density_F(lam);
    const double cands[3] = {0.0, M_PI, 2.0 * M_PI};
    double best = cands[0];
    for (double c : cands)
      if (std::abs(th - c) < std::abs(th - best)) best = c;
    return best;
  };
  auto g0 = [&](double lmin, double lmax) {
    const double Ymin = map.y_of_lambda(lmin);
    const double Ymax = (lmax >= -1e-13) ? map.M() : map.y_of_lambda(lmax);
    const double boundary = theta_at(lmax) * Ymax - theta_at(lmin) * Ymin;
    // int theta F = int (x0 + 2 lam t + gamma) + pi int F
    double igamma = 0.0;
    if (!profile.parity_even())
      igamma = integrate([&profile](double l) { return profile.phase_gamma(l); },
                         lmin, lmax, 1e-11, 1e-10);
    const double itf = x0 * (lmax - lmin) + t * (lmax * lmax - lmin * lmin) +
                       igamma + M_PI * (Ymax - Ymin);
    return boundary - itf;
  };
  out.g0_plus = g0(-b.u2B(), -b.u1B());
  out.g0_minus = g0(-b.u0B(), 0.0);
  return out;
}

std::vector<Crossing> zero_crossings(const Ensemble& ens, const BurgersSolver& burgers,
                                     double t, double xlo, double xhi, int p) {
  const MatC B = build_B(ens, t);
  const HermitianSpectrum bs = eig_hermitian(B);
  std::vector<Crossing> out;
  MatC A = build_A(ens, 0.0, t);
  for (int i = 0; i < bs.alpha.size(); ++i) {
    const double xc = bs.alpha(i);
    if (xc < xlo || xc > xhi) continue;
    update_A_diagonal(ens, xc, t, A);
    const HermitianSpectrum as = eig_hermitian(A);
    int k0 = 0;
    for (int k = 1; k < as.alpha.size(); ++k)
      if (std::abs(as.alpha(k)) < std::abs(as.alpha(k0))) k0 = k;
    double vx = 0.0;
    for (int j = 0; j < ens.N; ++j)
      vx += -2.0 * ens.lambda[j] * std::norm(as.vectors(j, k0));
    Crossing c;
    c.x = xc;
    c.alpha_x = vx;
    const VelocityPrediction pred = velocity_predictions(burgers, xc, t, ens.eps, p);
    if (!pred.triple) {
      c.cls = EigClass::SLOW;
    } else {
      const double split = std::sqrt(pred.v_slow * pred.v_fast);
      c.cls = (vx < split) ? EigClass::SLOW : EigClass::FAST;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace bolab
