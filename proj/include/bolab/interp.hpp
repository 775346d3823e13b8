#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bolab {

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slope limiting).
// Preserves monotonicity of the data, which keeps the inverse well defined.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: need >=2 nodes");
    for (size_t i = 0; i + 1 < n; ++i)
      if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("Pchip: x not increasing");
    m_.assign(n, 0.0);
    std::vector<double> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = edge_slope(x_[0], x_[1], x_[2 < n ? 2 : 1], d[0], n > 2 ? d[1] : d[0]);
    m_[n - 1] = edge_slope(x_[n - 1], x_[n - 2], x_[n > 2 ? n - 3 : n - 2],
                           d[n - 2], n > 2 ? d[n - 3] : d[n - 2]);
    for (size_t i = 1; i + 1 < n; ++i) {
      if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
        m_[i] = 0.0;
      } else {
        const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
        const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
        m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
  }

  double operator()(double xq) const { return eval(xq).first; }
  double deriv(double xq) const { return eval(xq).second; }

  double xmin() const { return x_.front(); }
  double xmax() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

  // Invert y(x)=target on a monotone table by bisection on the interpolant.
  double invert(double target) const {
    const bool incr = y_.back() > y_.front();
    double lo = x_.front(), hi = x_.back();
    const double ylo = incr ? y_.front() : y_.back();
    const double yhi = incr ? y_.back() : y_.front();
    if (target < ylo || target > yhi)
      throw std::invalid_argument("Pchip::invert: target outside data range");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = (*this)(mid);
      if ((v < target) == incr) lo = mid; else hi = mid;
      if (hi - lo < 1e-15 * (std::abs(hi) + 1.0)) break;
    }
    return 0.5 * (lo + hi);
  }

 private:
  static double edge_slope(double x0, double x1, double x2, double d0, double d1) {
    const double h0 = x1 - x0, h1 = x2 - x1;
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((m > 0) != (d0 > 0)) m = 0.0;
    else if ((d0 > 0) != (d1 > 0) && std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
    return m;
  }

  std::pair<double, double> eval(double xq) const {
    const size_t n = x_.size();
    size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin();
    if (i == 0) i = 1;
    if (i >= n) i = n - 1;
    --i;
    const double h = x_[i + 1] - x_[i];
    const double s = (xq - x_[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    const double v = h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    const double dh00 = 6 * s * (s - 1), dh10 = (1 - s) * (1 - 3 * s);
    const double dh01 = 6 * s * (1 - s), dh11 = s * (3 * s - 2);
    const double dv = dh00 * y_[i] / h + dh10 * m_[i] + dh01 * y_[i + 1] / h + dh11 * m_[i + 1];
    return {v, dv};
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace bolab
