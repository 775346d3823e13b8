#pragma once

#include <vector>

#include "bolab/burgers.hpp"
#include "bolab/spectral.hpp"

namespace bolab {

enum class EigClass { SLOW, FAST, AMBIGUOUS };

struct SmallEig {
  int index = 0;
  double alpha = 0.0;
  double alpha_x = 0.0;
  EigClass cls = EigClass::SLOW;
};

struct SmallEigenSet {
  double cutoff = 0.0;   // eps^r
  double v_split = 0.0;  // geometric mean of the predicted velocities (0 if single-valued)
  std::vector<SmallEig> entries;
};

struct VelocityPrediction {
  double v_slow = 0.0;
  double v_fast = 0.0;  // 0 when (x,t) is single-valued
  bool triple = false;
};

// v_slow = (2p-1) u0B / (p ln(1/eps));  v_fast = 2(u2B-u1B)/ln((u2B-u0B)/(u1B-u0B))
VelocityPrediction velocity_predictions(const BurgersSolver& burgers, double x0, double t,
                                        double eps, int p);

// Filter |alpha| <= eps^r and classify by velocity against the geometric-mean
// split, with a +-25% ambiguous band.  All entries are SLOW when (x,t) is
// single-valued.
SmallEigenSet small_eigs(const HermitianSpectrum& spec, const Velocities& vel,
                         const BurgersSolver& burgers, double x, double t, double eps,
                         double r, int p);

// Limiting eigenvalue density  G(alpha; x,t) = -(1/4pi) int chi dlambda/lambda
// over { -2 lambda (x + 2 lambda t - x+) < alpha < -2 lambda (x + 2 lambda t - x-) }.
double density_G(const Profile& profile, double alpha, double x, double t);
// int_{a1}^{a2} G(alpha) dalpha, single lambda-integral of the window overlap.
double density_G_window(const Profile& profile, double a1, double a2, double x, double t);
// Small root eta(alpha) of u0(alpha/(2 eta) + x + 2 eta t) = -eta, eta < 0;
// behaves like -K |alpha|^{2p/(2p-1)} with K = (2^{-2p}/C)^{1/(2p-1)}.
double eta_root(const Profile& profile, double alpha, double x, double t);
// coefficient of ln(1/|alpha|) in G as alpha -> 0:  (1/4pi) 2p/(2p-1)
double density_G_log_coefficient(int p);

// 2pi-periodic sawtooth: theta - pi on (0, 2pi).  U(U(theta)) = theta away
// from the jump; odd on (-pi,0) u (0,pi).
double sawtooth_U(double theta);

// Eikonal phase derivative for alpha = 0:
//   S'(y) = U( [x + 2 Lambda(y) t + gamma(Lambda(y))] / F(Lambda(y)) ).
// Throws std::domain_error when the argument leaves (-pi, pi).
double eikonal_Sprime(const LambdaMap& map, double y, double x, double t);

// Admissible y-intervals of the alpha = 0 eikonal equation, from the Burgers
// branch values: [Y(-u0B), M], plus [Y(-u2B), Y(-u1B)] in the triple region.
// Sorted by increasing y.
std::vector<std::pair<double, double>> admissible_y_intervals(const LambdaMap& map,
                                                              const BurgersSolver& burgers,
                                                              double x, double t);

// Least-squares a0 for |v_j|^2 ~ a0^2 Lambda'(y_j)/(-Lambda(y_j)) on one
// y-interval, plus the squared-norm fraction the interval carries.
struct AmplitudeFit {
  double a0 = 0.0;
  double rms = 0.0;         // of |v|^2 - a0^2 phi
  double peak = 0.0;        // max |v|^2 on the interval
  double norm_fraction = 0.0;
  int n_points = 0;
  bool skipped = false;  // interval shorter than 8 grid points
};
std::vector<AmplitudeFit> wkb_amplitude_fit(const Eigen::Ref<const VecC>& v,
                                            const Ensemble& ens, const LambdaMap& map,
                                            const std::vector<std::pair<double, double>>& intervals);

// Mean signed deviation between the measured site-to-site phase shift
// arg(v_{j+1}/v_j) and S'(y_j + eps/2) over one interval; also the mean of
// absolute deviations (edge-dominated, reported for diagnostics).
struct PhaseDeviation {
  double mean_signed = 0.0;
  double mean_abs = 0.0;
  int n_pairs = 0;
};
PhaseDeviation eikonal_phase_deviation(const Eigen::Ref<const VecC>& v, const Ensemble& ens,
                                       const LambdaMap& map, double x, double t,
                                       std::pair<double, double> interval);

// Orbit of the symbol: theta(lambda) = pi + (x + 2 lambda t + gamma)/F on each
// admissible interval.
struct OrbitCurve {
  std::vector<double> lambda;
  std::vector<double> theta;  // in (0, 2pi)
  double lambda_lo = 0.0, lambda_hi = 0.0;
};
std::vector<OrbitCurve> orbit(const Profile& profile, const BurgersSolver& burgers,
                              double x, double t, int n_per_interval = 256);

// Bohr-Sommerfeld data at (x0, t) in the triple region: parallel-transport
// integrals by the integrated-by-parts form (theta at the integration limits
// is 0, pi, or 2pi exactly) and the predicted crossing spacings 2 pi eps/f.
struct BSPrediction {
  double g0_plus = 0.0, g0_minus = 0.0;
  double f_plus = 0.0, f_minus = 0.0;
  double spacing_fast = 0.0;  // 2 pi eps / f+
  double spacing_slow = 0.0;  // 2 pi eps / f-
};
BSPrediction bohr_sommerfeld(const Profile& profile, const LambdaMap& map,
                             const BurgersSolver& burgers, double x0, double t, double eps);

// x-locations in [xlo, xhi] where alpha = 0 is an eigenvalue of A(x,t):
// exactly the eigenvalues of B(t).  Each crossing is labeled SLOW/FAST from
// the velocity of the near-zero eigenvalue of A at that x.
struct Crossing {
  double x = 0.0;
  double alpha_x = 0.0;
  EigClass cls = EigClass::SLOW;
};
std::vector<Crossing> zero_crossings(const Ensemble& ens, const BurgersSolver& burgers,
                                     double t, double xlo, double xhi, int p);

}  // namespace bolab
