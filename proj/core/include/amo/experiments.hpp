#pragma once
// Orchestrated quantitative experiments: the Lyapunov lower bound on J_δ for
// a fine approximant at complex energy, the meagerness of S(fine) ∩ J_δ as
// the next quotient grows, the F_τ density-of-states mass bounds, and the
// Parreau–Widom failure mechanism (diverging γ̄ sums over gap families).
// Every report embeds its instance so a run can be reproduced exactly.

#include "frequency.hpp"
#include "spectrum.hpp"
#include <string>
#include <vector>

namespace amo {

struct LSInstance {
  RationalFreq pq;       // coarse approximant p/q
  RationalFreq pq_fine;  // fine approximant p̃/q̃
  double lambda = 0;
  double delta = 0;      // J_δ exclusion parameter, default c₀ q² λ^q
  double r = 1;          // growth-rate parameter
  double eps = 0;        // imaginary offset, >= floor exp(−e^{rq}/(15000 q² λ^{q/2}))
  double theta = 0;
  std::vector<double> E_grid;  // energies inside J_δ
};

// pq = convergent n of cf, pq_fine = convergent n+1; δ = c0·q²λ^q, ε at its
// floor, grid_pts energies spread over the J_δ intervals proportionally to
// length. Checks the instance invariants (convergent gap enclosures
// < δe^{−rq}, exp(−e^{rq/2}) < δ, ε ≥ floor) and throws when one fails.
LSInstance ls_instance(const FrequencyCF& cf, int n, double lambda, double r,
                       double c0 = 0.01, int grid_pts = 101, double theta = 0);

struct LSReport {
  LSInstance inst;
  double min_gamma = 0;      // min over the grid of γ_{p̃/q̃,λ,θ}(E + iε)
  double bound = 0;          // δ/(9600 q² λ^{q/2})
  bool holds = false;
  long q_star = -1;          // first coarse q where it held (escalating runs)
  bool eps_monotone = true;  // min γ at 2ε >= min γ at ε (within 1e-12)
};

LSReport ls_lower_bound_check(const LSInstance& inst);

// Rebuilds instances at levels n, n+1, ... of cf until the bound holds on the
// whole grid or the coarse q exceeds q_max; q_star records the first success.
LSReport ls_escalate(const FrequencyCF& cf, int n0, double lambda, double r,
                     long q_max = 20, double c0 = 0.01, int grid_pts = 101);

struct MeagernessPoint {
  RationalFreq fine;
  double x = 0;           // q̃ δ / q, the regression abscissa
  double ln_measure = 0;  // ln |S(p̃/q̃, λ) ∩ J_δ|
  double ln_bound = 0;    // ln[(C q²/δ) exp(−x/C₁)]
  long zero_count = 0;
  long sturm_defect = 0;
};

struct MeagernessReport {
  RationalFreq coarse;
  double lambda = 0, delta = 0, r = 0, C = 1, C1 = 1;
  std::vector<MeagernessPoint> points;
  double slope = 0;  // fitted d ln(measure)/dx, expected negative
  bool strictly_decreasing = false;
  bool bounds_hold = false;  // ln_measure <= ln_bound at every point
};

// coarse = last convergent of `prefix`; one point per next quotient a in
// `a_next` (fine = convergent with that quotient appended). Precondition per
// point: q̃·δ > e^{r·q}, else an instance error.
MeagernessReport meagerness_check(const FrequencyCF& prefix, double lambda,
                                  double delta, const std::vector<long>& a_next,
                                  double r = 1.0, double C = 1.0,
                                  double C1 = 1.0);

struct FTauMassReport {
  RationalFreq pq, partner;
  double lambda = 0, tau = 0;
  double rho_base = 0;      // ρ̄_{p/q,λ}(F_τ)
  double bound_base = 0;    // (τ arccos τ/π)·λ^{q/2}/q
  double rho_partner = 0;   // ρ̄_{partner,λ}(F_τ)
  double bound_partner = 0; // (τ arccos τ/(4π))·λ^{q/2}/q
  bool base_holds = false, partner_holds = false;
};

// Precondition: |partner − p/q| <= τ²arccos(τ/2)/(256π²q⁴)·λ^{3q/2}
// (the fine-approximant proximity condition), else a named error.
FTauMassReport ftau_mass_check(const RationalFreq& pq, double lambda,
                               double tau, const RationalFreq& partner);

struct PWFailureReport {
  RationalFreq pq;
  double lambda = 0, r = 0, C1 = 1;
  double ln_pitch = 0, ln_flen = 0;  // interval pitch 225λ^{(3+r)q/2}, |F_half|
  long count = 0;                    // #𝒥 = floor(|F_half| / pitch)
  double count_bound = 0;            // (1−λ)/(1000 q³)·λ^{−(1+r)q/2}
  bool count_holds = false;
  double min_gamma = 0, sum_gamma = 0;  // γ̄ at middle-ninth midpoints
  double per_interval_bound = 0;        // λ^{q/2}/(4 C₁ q²)
  double sum_bound = 0;                 // (1−λ)/(4000 C₁ q⁵)·λ^{−rq/2}
  bool sum_holds = false;
  long sampled = 0;          // γ̄ evaluations (capped; sum extrapolated)
  double pw_independent = 0; // pw_sum's gap-based value for comparison
};

// Packs disjoint intervals of length 225λ^{(3+r)q/2} into F_{1/2}, verifies
// the count lower bound, samples γ̄ at the middle-ninth midpoints and reports
// the resulting lower bound for the Parreau–Widom sum. Errors when the pitch
// exceeds |F_{1/2}|.
PWFailureReport pw_failure_experiment(const RationalFreq& pq, double lambda,
                                      double r, double C1 = 1.0,
                                      long sample_cap = 64);

}  // namespace amo
