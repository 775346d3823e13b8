#include "bolab/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "bolab/quad.hpp"
#include "bolab/roots.hpp"

namespace bolab {

Profile::Profile(std::string name, std::function<double(double)> u0, int decay_p,
                 double decay_C, bool parity_even, double maximizer_hint,
                 std::map<std::string, double> params)
    : name_(std::move(name)), u0_(std::move(u0)), p_(decay_p), C_(decay_C),
      even_(parity_even), params_(std::move(params)) {
  if (p_ < 1 || C_ <= 0.0)
    throw std::invalid_argument("Profile: non-integrable decay (need p >= 1, C > 0)");
  xmax_ = brent_min([this](double x) { return -u0_(x); },
                    maximizer_hint - 4.0, maximizer_hint + 4.0, 1e-14);
  L_ = u0_(xmax_);
  if (!(L_ > 0.0)) throw std::invalid_argument("Profile: u0 not positive at maximizer");
  M_ = integrate_R(u0_, 1e-12, 1e-12) / (2.0 * M_PI);
  if (!std::isfinite(M_) || M_ <= 0.0)
    throw std::invalid_argument("Profile: mean integral not finite");
}

void Profile::require_domain(double lambda) const {
  if (!(lambda > -L_ && lambda < 0.0))
    throw std::domain_error("Profile: lambda outside (-L, 0)");
}

std::pair<double, double> Profile::turning_points(double lambda) const {
  require_domain(lambda);
  const double level = -lambda;
  auto g = [this, level](double x) { return u0_(x) - level; };
  // u0 is unimodal: one crossing each side of the maximizer.
  double hi = xmax_ + 1.0;
  while (g(hi) > 0.0) hi = xmax_ + 2.0 * (hi - xmax_);
  const double xp = brent_root(g, xmax_, hi, 1e-13);
  double lo = xmax_ - 1.0;
  while (g(lo) > 0.0) lo = xmax_ - 2.0 * (xmax_ - lo);
  const double xm = brent_root(g, lo, xmax_, 1e-13);
  return {xm, xp};
}

double Profile::density_F(double lambda) const {
  const auto [xm, xp] = turning_points(lambda);
  return (xp - xm) / (2.0 * M_PI);
}

double Profile::phase_gamma(double lambda) const {
  if (even_) {
    require_domain(lambda);
    return 0.0;
  }
  const auto [xm, xp] = turning_points(lambda);
  return -0.5 * (xp + xm);
}

LambdaMap::LambdaMap(const Profile& profile, int table_size) : profile_(&profile) {
  const double M = profile.M(), L = profile.L();
  const int p = profile.decay_p();
  const double q = 2.0 * p / (2.0 * p - 1.0);
  const int n = table_size;
  // Nodes are laid out in the regularizing variable s, lambda = -s^q, with
  // Chebyshev-extrema clustering at both interval ends.  The y column is the
  // cumulative density accumulated panel by panel (one GK15 panel per
  // segment; segments are short and the integrand is regular in s).
  const double s_max = std::pow(L, 1.0 / q);
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i)
    s[i] = s_max * 0.5 * (1.0 - std::cos(M_PI * double(i) / double(n - 1)));
  auto integrand = [&profile, q](double sv) {
    const double lam = -std::pow(sv, q);
    if (lam >= 0.0 || lam <= -profile.L()) return 0.0;
    return profile.density_F(lam) * q * std::pow(sv, q - 1.0);
  };
  // ys[i] = Y(lambda_i) with lambda_i = -s_i^q; march from s_max (y = 0).
  std::vector<double> ys(n), lams(n);
  ys[n - 1] = 0.0;
  lams[n - 1] = -L;
  lams[0] = 0.0;
  double y_acc = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    y_acc += detail::gk15(integrand, s[i], s[i + 1]).integral;
    ys[i] = y_acc;
    if (i > 0) lams[i] = -std::pow(s[i], q);
  }
  // pin the top node to M exactly (the cumulative equals M to quadrature error)
  const double scale = M / ys[0];
  std::vector<double> ycol(n), lcol(n);
  for (int i = 0; i < n; ++i) {
    ycol[i] = ys[n - 1 - i] * scale;
    lcol[i] = lams[n - 1 - i];
  }
  ycol.front() = 0.0;
  ycol.back() = M;
  table_ = Pchip(ycol, lcol);
}

double LambdaMap::tail_integral(double lambda) const {
  const Profile& pr = *profile_;
  const int p = pr.decay_p();
  const double q = 2.0 * p / (2.0 * p - 1.0);
  const double s_top = std::pow(-lambda, 1.0 / q);
  // int_lambda^0 F = int_0^{s(lambda)} F(-s^q) q s^{q-1} ds  (regular at s=0)
  return integrate(
      [&pr, q](double s) {
        const double lam = -std::pow(s, q);
        if (lam >= 0.0) return 0.0;
        return pr.density_F(lam) * q * std::pow(s, q - 1.0);
      },
      0.0, s_top, 1e-13, 1e-12);
}

double LambdaMap::y_of_lambda(double lambda) const {
  if (lambda <= -profile_->L()) return 0.0;
  if (lambda >= 0.0) return profile_->M();
  return profile_->M() - tail_integral(lambda);
}

double LambdaMap::lambda_of_y(double y) const {
  const double M = profile_->M();
  if (!(y > 0.0 && y < M)) throw std::domain_error("LambdaMap: y outside (0, M)");
  return std::min(table_(y), -1e-300);
}

double LambdaMap::lambda_of_y_exact(double y) const {
  const double M = profile_->M(), L = profile_->L();
  if (!(y > 0.0 && y < M)) throw std::domain_error("LambdaMap: y outside (0, M)");
  double lam = table_(y);
  lam = std::min(std::max(lam, -L * (1.0 - 1e-14)), -1e-300);
  double lo = -L, hi = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double g = y_of_lambda(lam) - y;
    if (std::abs(g) < 1e-12) return lam;
    if (g > 0) hi = lam; else lo = lam;
    const double f = profile_->density_F(lam);
    double next = lam - g / f;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lam = next;
  }
  return lam;
}

double LambdaMap::dlambda_dy(double y) const {
  return 1.0 / profile_->density_F(lambda_of_y(y));
}

double LambdaMap::dlambda_dy_interp(double y) const { return table_.deriv(y); }

double LambdaMap::M() const { return profile_->M(); }
double LambdaMap::L() const { return profile_->L(); }

Profile make_profile(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (name == "lorentzian") {
    const double a = get("a", 2.0), w = get("w", 1.0);
    if (a <= 0 || w <= 0) throw std::invalid_argument("lorentzian: need a > 0, w > 0");
    return Profile(name, [a, w](double x) { return a / (1.0 + (x / w) * (x / w)); },
                   1, a * w * w, true, 0.0, {{"a", a}, {"w", w}});
  }
  if (name == "rational_even") {
    const double a = get("a", 2.0), w = get("w", 1.0);
    const int m = static_cast<int>(get("m", 2.0));
    if (a <= 0 || w <= 0 || m < 1) throw std::invalid_argument("rational_even: bad params");
    return Profile(name,
                   [a, w, m](double x) {
                     return a / std::pow(1.0 + (x / w) * (x / w), m);
                   },
                   m, a * std::pow(w, 2 * m), true, 0.0,
                   {{"a", a}, {"w", w}, {"m", double(m)}});
  }
  throw std::invalid_argument("unknown profile: " + name);
}

}  // namespace bolab
