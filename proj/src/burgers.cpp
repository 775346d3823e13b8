#include "bolab/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bolab/roots.hpp"

namespace bolab {

std::vector<double> solve_cubic(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) {
    if (c2 == 0.0) {
      if (c1 == 0.0) return {};
      return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    const double r = std::sqrt(disc);
    std::vector<double> out = {(-c1 - r) / (2 * c2), (-c1 + r) / (2 * c2)};
    std::sort(out.begin(), out.end());
    return out;
  }
  const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
  // depress: u = z - b/3
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = 4.0 * p * p * p + 27.0 * q * q;
  std::vector<double> out;
  if (disc < 0.0) {
    // three real roots (trigonometric form)
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      out.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - b / 3.0);
  } else {
    // one real root (Cardano with stable cbrt)
    const double rt = std::sqrt(disc / 108.0);
    const double w1 = std::cbrt(-q / 2.0 + rt);
    const double w2 = std::cbrt(-q / 2.0 - rt);
    out.push_back(w1 + w2 - b / 3.0);
  }
  // Newton polish
  for (double& u : out) {
    for (int it = 0; it < 3; ++it) {
      const double f = ((c3 * u + c2) * u + c1) * u + c0;
      const double fp = (3.0 * c3 * u + 2.0 * c2) * u + c1;
      if (fp != 0.0) u -= f / fp;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BurgersSolver::BurgersSolver(const Profile& profile) : profile_(&profile) {
  cubic_ = (profile.name() == "lorentzian");
  if (cubic_) {
    a_ = profile.params().at("a");
    w_ = profile.params().at("w");
  }
  // t_b = 1/(2 max(-u0')) over the decreasing flank right of the maximizer.
  const double x0 = profile.maximizer();
  double hi = x0 + 1.0;
  auto mslope = [&profile](double x) {
    const double h = 1e-6;
    return -(profile.eval_u0(x + h) - profile.eval_u0(x - h)) / (2.0 * h);
  };
  while (mslope(hi) > mslope(hi - 0.5 * (hi - x0))) hi *= 2.0;
  xi_star_ = brent_min([&mslope](double x) { return -mslope(x); }, x0, hi, 1e-12);
  t_b_ = 1.0 / (2.0 * mslope(xi_star_));
}

std::vector<double> BurgersSolver::roots_cubic(double x, double t) const {
  // u = a/(1+((x-2tu)/w)^2)  =>  4t^2 u^3 - 4tx u^2 + (w^2+x^2) u - a w^2 = 0
  std::vector<double> all =
      solve_cubic(4.0 * t * t, -4.0 * t * x, w_ * w_ + x * x, -a_ * w_ * w_);
  // roots with u <= 0 cannot satisfy u = u0(x-2tu) > 0
  std::vector<double> out;
  for (double u : all)
    if (u > 0.0) out.push_back(u);
  return out;
}

std::vector<double> BurgersSolver::roots_fan(double x, double t) const {
  // characteristic fan: find xi with xi + 2 t u0(xi) = x; u = u0(xi)
  const Profile& pr = *profile_;
  const double L = pr.L();
  const int n = 2048;
  const double lo = x - 2.0 * t * L - 1.0, hi = x + 1.0;
  auto g = [&pr, x, t](double xi) { return xi + 2.0 * t * pr.eval_u0(xi) - x; };
  std::vector<double> out;
  double prev = g(lo);
  for (int i = 1; i <= n; ++i) {
    const double xi = lo + (hi - lo) * double(i) / n;
    const double cur = g(xi);
    if (prev == 0.0) out.push_back(pr.eval_u0(lo + (hi - lo) * double(i - 1) / n));
    else if (prev * cur < 0.0) {
      const double root = brent_root(g, lo + (hi - lo) * double(i - 1) / n, xi, 1e-13);
      out.push_back(pr.eval_u0(root));
    }
    prev = cur;
  }
  std::sort(out.begin(), out.end());
  // dedupe near-coincident branch values
  std::vector<double> ded;
  for (double v : out)
    if (ded.empty() || std::abs(v - ded.back()) > 1e-11) ded.push_back(v);
  return ded;
}

BurgersBranches BurgersSolver::branches(double x, double t) const {
  if (t < 0.0) throw std::domain_error("branches: t must be >= 0");
  BurgersBranches out;
  out.x = x;
  out.t = t;
  if (t == 0.0) {
    out.values = {profile_->eval_u0(x)};
    return out;
  }
  out.values = cubic_ ? roots_cubic(x, t) : roots_fan(x, t);
  if (out.values.empty())
    throw std::runtime_error("branches: no real branch found");
  out.triple = out.values.size() == 3;
  if (out.values.size() != 1 && out.values.size() != 3) out.degenerate = true;
  if (t > t_b_) {
    const auto [xm, xp] = caustics(t);
    if (std::abs(x - xm) < 1e-6 || std::abs(x - xp) < 1e-6) out.degenerate = true;
  }
  return out;
}

std::pair<double, double> BurgersSolver::caustics(double t) const {
  if (!(t > t_b_)) throw std::domain_error("caustics: t must exceed the breaking time");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = caustic_cache_.find(t);
    if (it != caustic_cache_.end()) return it->second;
  }
  // fold points: 1 + 2 t u0'(xi) = 0, one on each side of the steepest point
  const Profile& pr = *profile_;
  auto g = [&pr, t](double xi) {
    const double h = 1e-7;
    const double du = (pr.eval_u0(xi + h) - pr.eval_u0(xi - h)) / (2.0 * h);
    return 1.0 + 2.0 * t * du;
  };
  const double x0 = profile_->maximizer();
  const double xi1 = brent_root(g, x0, xi_star_, 1e-13);
  double far = xi_star_ + 1.0;
  while (g(far) < 0.0) far = xi_star_ + 2.0 * (far - xi_star_);
  const double xi2 = brent_root(g, xi_star_, far, 1e-13);
  double X1 = xi1 + 2.0 * t * pr.eval_u0(xi1);
  double X2 = xi2 + 2.0 * t * pr.eval_u0(xi2);
  if (X1 > X2) std::swap(X1, X2);
  if (cubic_) {
    // polish on the cubic discriminant so the double-root condition holds
    // to root tolerance rather than finite-difference accuracy
    auto disc = [this, t](double x) {
      const double p3 = 4.0 * t * t, p2 = -4.0 * t * x, p1 = w_ * w_ + x * x,
                   p0 = -a_ * w_ * w_;
      return 18.0 * p3 * p2 * p1 * p0 - 4.0 * p2 * p2 * p2 * p0 +
             p2 * p2 * p1 * p1 - 4.0 * p3 * p1 * p1 * p1 - 27.0 * p3 * p3 * p0 * p0;
    };
    for (double* X : {&X1, &X2}) {
      double lo = *X - 1e-3, hi = *X + 1e-3;
      if (disc(lo) * disc(hi) < 0.0) *X = brent_root(disc, lo, hi, 1e-14);
    }
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    caustic_cache_[t] = {X1, X2};
  }
  return {X1, X2};
}

double BurgersSolver::weak_limit(double x, double t) const {
  const BurgersBranches b = branches(x, t);
  double s = 0.0;
  double sign = 1.0;
  for (double v : b.values) {
    s += sign * v;
    sign = -sign;
  }
  return s;
}

}  // namespace bolab
