#pragma once
// Gauge functions ω: (0,1] → (0,∞), non-decreasing, used for Hausdorff
// content, modulus-of-continuity work and the Liouville frequency recipes.
//
// Two parametric families plus a custom monotone table:
//   omega_t:       ω_t(s)  = 1 / log^t(1/(e s))   (log-scale gauges)
//   omega_tilde_t: ω̃_t(s) = s^t                   (power gauges)
//
// ω_t is only meaningful at small s (log(1/(es)) must stay positive and
// bounded away from 0); the domain is clamped to s ∈ (0, e⁻²] with a linear
// continuation ω_t(s) = s·e² for s > e⁻² so that evaluations are total and
// monotone. The clamp is part of the gauge's identity and serialized with it.
//
// All evaluations are available in log-space (ln ω as a function of ln s):
// the deep Liouville levels need scales like exp(-2q) with q ~ 10^5, far
// below the smallest positive double, and the cover costs live at scales
// like exp(-e^q).

#include "prec.hpp"
#include <vector>
#include <utility>

namespace amo {

class GaugeFn {
 public:
  enum class Kind { omega_t, omega_tilde_t, table };

  static GaugeFn omega(double t) { return GaugeFn(Kind::omega_t, t); }
  static GaugeFn omega_tilde(double t) { return GaugeFn(Kind::omega_tilde_t, t); }
  // Table rows are (s, ω(s)) pairs, sorted by s, both positive, non-decreasing.
  static GaugeFn from_table(std::vector<std::pair<Real, Real>> rows);

  Kind kind() const { return kind_; }
  double t() const { return t_; }

  Real eval(const Real& s) const;
  // ln ω(s) as a function of ln s; usable far outside double range.
  Real log_eval(const Real& ln_s) const;
  // ln ω⁻¹(y) as a function of ln y (monotone inverse; bisection for tables).
  Real log_inv(const Real& ln_y) const;

  // True when ω(s)·log(1/s) → 0 along the dyadic grid down to 2^-max_j
  // (the admissibility condition for the Liouville frequency recipe),
  // verified numerically: the sequence must decrease below decay_tol.
  bool decay_admissible(int max_j = 400, double decay_tol = 1e-6) const;

  std::string describe() const;

 private:
  GaugeFn(Kind k, double t) : kind_(k), t_(t) {}
  Kind kind_;
  double t_ = 0;
  std::vector<std::pair<Real, Real>> table_;
  std::vector<std::pair<Real, Real>> ln_table_;  // cached (ln s, ln ω(s))
};

}  // namespace amo
