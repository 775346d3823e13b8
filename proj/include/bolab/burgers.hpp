#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "bolab/profile.hpp"

namespace bolab {

// Branches of the multivalued solution u = u0(x - 2tu), sorted ascending.
struct BurgersBranches {
  double x = 0.0, t = 0.0;
  std::vector<double> values;    // 1 or 3 entries in (0, L]
  bool triple = false;
  bool degenerate = false;       // within 1e-6 of a caustic

  double u0B() const { return values.front(); }
  double u1B() const { return values.size() > 1 ? values[1] : 0.0; }
  double u2B() const { return values.back(); }
};

struct CausticData {
  double t_b = 0.0;
  // X-(t), X+(t) for t > t_b
};

class BurgersSolver {
 public:
  explicit BurgersSolver(const Profile& profile);

  BurgersBranches branches(double x, double t) const;
  double breaking_time() const { return t_b_; }
  std::pair<double, double> caustics(double t) const;  // requires t > t_b
  double weak_limit(double x, double t) const;         // alternating branch sum

  // Closed-form cubic path, valid for the Lorentzian a/(1+(x/w)^2) only.
  bool has_cubic() const { return cubic_; }

 private:
  std::vector<double> roots_cubic(double x, double t) const;
  std::vector<double> roots_fan(double x, double t) const;

  const Profile* profile_;
  bool cubic_ = false;
  double a_ = 0.0, w_ = 0.0;
  double t_b_ = 0.0;
  double xi_star_ = 0.0;  // characteristic point realizing the breaking time
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::pair<double, double>> caustic_cache_;
};

// All real roots of the depressed-free cubic c3 u^3 + c2 u^2 + c1 u + c0,
// ascending.  Used by the Lorentzian branch path and its discriminant oracle.
std::vector<double> solve_cubic(double c3, double c2, double c1, double c0);

}  // namespace bolab
