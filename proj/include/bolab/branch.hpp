#pragma once

#include <string>
#include <vector>

#include "bolab/burgers.hpp"
#include "bolab/spectral.hpp"

namespace bolab {

// Classification thresholds; nu_out = c_out * eps * ln(1/eps) together with
// |mu| <= B_bound marks outliers, nu < c_split * eps * ln(1/eps) inside the
// (10 eps widened) caustic interval marks the lower branch after breaking.
struct ClassifyConfig {
  double c_out = 10.0;
  double c_split = 0.5;
  double B_bound = 10.0;
  double caustic_pad_eps = 10.0;
};

struct BranchSets {
  std::vector<int> outliers;  // S_o
  std::vector<int> upper;     // S_U, sorted by Re sigma
  std::vector<int> lower;     // S_L, sorted by Re sigma
  double nu_out = 0.0, nu_split = 0.0, B_bound = 0.0;
};

BranchSets classify(const ComplexSpectrum& spec, double eps, double t, double t_b,
                    double Xminus, double Xplus, const ClassifyConfig& cfg = {});

enum class BranchTag { UPPER, LOWER };

// mu/nu samplings along one branch, rescaled (nu by eps ln(1/eps) for the
// upper branch, by eps for the lower one), with the forward difference
// quotient derivative columns.  The last derivative entry repeats its
// neighbor so all columns have equal length.
struct SamplingTable {
  BranchTag tag = BranchTag::UPPER;
  double eps = 0.0, t = 0.0, scale = 0.0;
  int N_branch = 0;
  std::vector<double> y;         // (k - 1/2)/N_branch
  std::vector<double> mu;        // increasing
  std::vector<double> nu;        // rescaled
  std::vector<double> mu_prime;  // (mu_{k+1}-mu_k) * N_branch
  std::vector<double> nu_prime;  // rescaled difference quotients

  bool mu_monotone = true;  // false flags a duplicate-real-part anomaly
};

SamplingTable sampling_table(const BranchSets& sets, BranchTag tag,
                             const ComplexSpectrum& spec, double eps, double t);

// Least-squares slopes of the edge samples against ln(eps) over a sweep.
struct ExponentFit {
  double q_minus = 0.0, q_plus = 0.0, r_minus = 0.0, r_plus = 0.0;
  double r2_q_minus = 0.0, r2_q_plus = 0.0, r2_r_minus = 0.0, r2_r_plus = 0.0;
  bool poor_fit = false;  // any R^2 < 0.99
};

struct EdgeSample {
  double eps = 0.0;
  double mu_first = 0.0, mu_last = 0.0;
  double nu_first = 0.0, nu_last = 0.0;  // unscaled
};

EdgeSample edge_sample(const SamplingTable& upper_raw_nu);
ExponentFit fit_exponents(const std::vector<EdgeSample>& sweep);

struct WhithamFields {
  double psi_U = 0.0, psi_L = 0.0, phi_L = 0.0;
  double r = 0.0;     // exp(-phi_L)
  double p_x0 = 0.0;  // phase shift from the nearest lower-branch real part
};

// psi = 2 pi eps N_branch / mu'(mu^{-1}(x)); the inverse uses a monotone
// cubic interpolant of the table.  phi_L = psi_L * nu_L at the same y.
double psi_from_table(const SamplingTable& tab, double x);
double nu_at_x(const SamplingTable& tab, double x);
double phase_p_x0(const SamplingTable& lower, double x0);
WhithamFields modulation_fields(const SamplingTable& upper, const SamplingTable& lower,
                                double x, double t);

// Modulated one-phase profile around x0 (window half-width <= eps^{3/4}):
//   u = psi_U(x) + psi_L sinh(phi_L)/(cosh(phi_L) - cos(psi_L (x-x0)/eps + 2 pi p))
struct PeriodicProfile {
  std::vector<double> x;
  std::vector<double> u;
  double p_x0 = 0.0;
  double crest = 0.0;          // psi_U + psi_L sinh/cosh-1 at the anchor
  bool phase_anomaly = false;  // |p| > 0.55
};
PeriodicProfile periodic_profile(const SamplingTable& upper, const SamplingTable& lower,
                                 double x0, double t, double eps,
                                 const std::vector<double>& xs);

// Partial Lorentzian sums over the three classified subsets;
// u_U + u_L + u_o equals the full sum exactly.
struct Decomposition {
  double u_U = 0.0, u_L = 0.0, u_o = 0.0;
};
Decomposition diagnostic_decompose(const ComplexSpectrum& spec, const BranchSets& sets,
                                   double eps, double x);

// sum_{j in Z} 1/(1 + (tau + j/Omega)^2): truncated partial sum, the same
// with an Euler-Maclaurin estimate of the |j| > jmax tail, and the
// sinh/cosh closed form.
double comb_sum_partial(double omega, double tau, long jmax);
double comb_sum(double omega, double tau, long jmax = 10000);
double comb_closed_form(double omega, double tau);

}  // namespace bolab
