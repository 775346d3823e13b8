#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace bolab {

// Adaptive Gauss-Kronrod 7/15 quadrature on a finite interval.
// Interval subdivision on the local error estimate until |I15-I7| meets
// max(abstol, reltol*|I|) distributed over the panel stack.
namespace detail {

// 15-point Kronrod nodes/weights on [-1,1] with embedded 7-point Gauss.
inline constexpr double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.0,                0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kWgk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kWg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult { double integral; double error; };

inline PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double ik = 0.0, ig = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + h * kXgk[i]);
    ik += kWgk[i] * v;
    if (i % 2 == 1) ig += kWg[i / 2] * v;
  }
  ik *= h; ig *= h;
  return {ik, std::abs(ik - ig)};
}

inline void adapt(const std::function<double(double)>& f, double a, double b,
                  double abstol, double reltol, int depth, double& acc, double& errac) {
  const PanelResult r = gk15(f, a, b);
  const double target = std::max(abstol, reltol * std::abs(r.integral));
  if (r.error <= target || depth > 48 || (b - a) < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
    acc += r.integral;
    errac += r.error;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * abstol, reltol, depth + 1, acc, errac);
  adapt(f, m, b, 0.5 * abstol, reltol, depth + 1, acc, errac);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abstol = 1e-12, double reltol = 1e-12) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    return -integrate(f, b, a, abstol, reltol);
  }
  double acc = 0.0, errac = 0.0;
  detail::adapt(f, a, b, abstol, reltol, 0, acc, errac);
  return acc;
}

// Integral over the whole real line via x = tan(theta).
inline double integrate_R(const std::function<double(double)>& f,
                          double abstol = 1e-12, double reltol = 1e-12) {
  const double half_pi = 1.5707963267948966;
  auto g = [&f](double th) {
    const double c = std::cos(th);
    const double x = std::tan(th);
    return f(x) / (c * c);
  };
  return integrate(g, -half_pi + 1e-14, half_pi - 1e-14, abstol, reltol);
}

}  // namespace bolab
