#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "bolab/profile.hpp"

namespace bolab {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

// Quantized discrete scattering data:  int_{-L}^{lambda_j} F = eps (j - 1/2).
struct Ensemble {
  double eps = 0.0;
  int N = 0;
  std::vector<double> lambda;  // ascending, in (-L, 0)
  std::vector<double> gamma;   // phases at lambda_j

  std::string to_json() const;
  static Ensemble from_json(const std::string& text);
};

// eps is snapped to M/round(M/eps) when snap_to_M_over_N is set, so that
// int_{lambda_N}^0 F = eps/2 holds exactly for the sequence eps_N = M/N.
Ensemble quantize(const Profile& profile, const LambdaMap& map, double eps,
                  bool snap_to_M_over_N = true);

// Dense matrix builders.  A carries the (x,t) dependence on its diagonal only;
// an x-sweep should reuse the off-diagonal part via update_A_diagonal.
MatC build_A(const Ensemble& ens, double x, double t);
void update_A_diagonal(const Ensemble& ens, double x, double t, MatC& A);
MatC build_B(const Ensemble& ens, double t);
MatC build_C(const Ensemble& ens, double t);
VecD build_D_diag(const Ensemble& ens);  // sqrt(-2 lambda_j)

}  // namespace bolab
