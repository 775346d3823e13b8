#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bolab/interp.hpp"

namespace bolab {

// Admissible initial condition u0: positive, single maximizer, u0(x) = -lambda
// has exactly two roots for lambda in (-L,0), algebraic decay u0 ~ C x^{-2p}.
class Profile {
 public:
  Profile(std::string name, std::function<double(double)> u0, int decay_p,
          double decay_C, bool parity_even, double maximizer_hint,
          std::map<std::string, double> params = {});

  double eval_u0(double x) const { return u0_(x); }

  // Two roots of u0(x) = -lambda, bracketed solve to 1e-12.
  std::pair<double, double> turning_points(double lambda) const;

  double density_F(double lambda) const;   // (x+ - x-)/(2 pi)
  double phase_gamma(double lambda) const; // -(x+ + x-)/2, 0 for even u0

  double L() const { return L_; }
  double M() const { return M_; }
  int decay_p() const { return p_; }
  double decay_C() const { return C_; }
  bool parity_even() const { return even_; }
  double maximizer() const { return xmax_; }
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }

 private:
  void require_domain(double lambda) const;

  std::string name_;
  std::function<double(double)> u0_;
  int p_;
  double C_;
  bool even_;
  double xmax_ = 0.0;
  double L_ = 0.0, M_ = 0.0;
  std::map<std::string, double> params_;
};

// Monotone map Lambda: (0,M) -> (-L,0) defined by  int_{-L}^{Lambda(y)} F = y,
// with inverse Y.  Tabulated on a 4096-node Chebyshev-extrema grid with
// monotone cubic interpolation; exact root-solve path for high-accuracy use.
class LambdaMap {
 public:
  explicit LambdaMap(const Profile& profile, int table_size = 4096);

  // Exact cumulative density  Y(lambda) = int_{-L}^{lambda} F,  adaptive
  // quadrature with the substitution lambda = -s^{2p/(2p-1)} near zero.
  double y_of_lambda(double lambda) const;

  double lambda_of_y(double y) const;        // interpolated (fast path)
  double lambda_of_y_exact(double y) const;  // quadrature + bracketed Newton
  double dlambda_dy(double y) const;         // identity route: 1/F(Lambda(y))
  double dlambda_dy_interp(double y) const;  // derivative of the interpolant

  double M() const;
  double L() const;
  const Profile& profile() const { return *profile_; }

 private:
  double tail_integral(double lambda) const;  // int_lambda^0 F

  const Profile* profile_;
  Pchip table_;  // y -> lambda
};

// Registry of admissible profiles selectable by name + parameters.
// "lorentzian": a/(1 + (x/w)^2) with params a (default 2), w (default 1).
// "rational_even": a/(1 + (x/w)^2)^m with integer m >= 1.
Profile make_profile(const std::string& name,
                     const std::map<std::string, double>& params = {});

}  // namespace bolab
