#pragma once
// Discriminant and level-set geometry for the rational-frequency operator:
// Chambers' discriminant Δ_{p/q,λ}, the nested level sets S, S₋, S_τ, the
// near-edge exclusion set J_δ, the F_τ half-band sliver, band/gap and
// Hausdorff-distance arithmetic on unions of closed intervals.
//
// Precision: every operation runs under max(128, 8q) mantissa bits; the
// quantities 2 ± 2λ^q separate at scale λ^q, exponentially small in q.

#include "prec.hpp"
#include "frequency.hpp"
#include <vector>
#include <optional>

namespace amo {

struct Band {
  Real lo, hi;
  Real length() const { return hi - lo; }
};

struct BandSet {
  std::vector<Band> bands;  // ordered, closed, touching stored separately
  RationalFreq pq;
  Real lambda{0};
  Real level{0};  // |Δ| <= level provenance (0 when not a level set)

  bool empty() const { return bands.empty(); }
  Real hull_lo() const { return bands.front().lo; }
  Real hull_hi() const { return bands.back().hi; }
  Real measure() const;
};

struct FTauResult {
  int j0 = 0;      // 1-based band index
  int xi = +1;     // sign of Δ on the selected half-band
  Real a, b;       // F_τ = (a, b] (or [b, a) mirrored; stored with a<b)
  double tau = 0;
  Real certified_length_lb;
};

// Δ_{p/q,λ}(E) = Tr Φ_q(E, p/q, π/(2q)); monic degree-q polynomial in E with
// q real simple zeros. Evaluated by direct 2×2 products (mpfr's exponent
// range makes overflow a non-issue); deriv variant also returns dΔ/dE.
Real discriminant_eval(const Real& E, const RationalFreq& pq, const Real& lambda);
CReal discriminant_eval(const CReal& E, const RationalFreq& pq, const Real& lambda);
void discriminant_deriv(const Real& E, const RationalFreq& pq, const Real& lambda,
                        Real& value, Real& deriv);

// max over the grids of |D_{p/q,λ,θ}(E) − Δ(E) + 2λ^q cos(qθ)| with D an
// independent transfer-product trace.
Real chambers_residual(const RationalFreq& pq, const Real& lambda,
                       const std::vector<Real>& E_grid,
                       const std::vector<Real>& theta_grid);

// Cached zeros/extrema skeleton of Δ, shared by the level-set routines.
struct DiscrSkeleton {
  RationalFreq pq;
  Real lambda;
  std::vector<Real> zeros;    // q simple zeros, increasing
  std::vector<Real> extrema;  // q−1 interior critical points, interlacing
  Real bracket_lo, bracket_hi;  // |Δ| > 4 outside [bracket_lo, bracket_hi]
};
DiscrSkeleton discr_skeleton(const RationalFreq& pq, const Real& lambda);

// {E : |Δ(E)| <= level}; exactly q bands counted with touching multiplicity
// (bands merging across a sub-level extremum are split at the extremum).
// level = 0 returns q degenerate point-bands at the zeros.
BandSet level_set(const RationalFreq& pq, const Real& lambda, const Real& level);
BandSet level_set(const DiscrSkeleton& sk, const Real& level);

// {E : lo <= Δ(E) <= hi} — the band set of D_θ = Δ − s shifted by s
// (lo = −2+s, hi = 2+s); exposed for the per-θ DOS/Thouless machinery.
BandSet range_set(const DiscrSkeleton& sk, const Real& lo, const Real& hi);

struct JDeltaResult {
  std::vector<Band> intervals;  // J_δ clipped to [min S − 1, max S + 1]
  BandSet complement;           // J_δ^c = level_set at 2 − 2λ^q + δ
  Real complement_measure;
};
JDeltaResult j_delta_set(const RationalFreq& pq, const Real& lambda, const Real& delta);

FTauResult f_tau(const RationalFreq& pq, const Real& lambda, double tau);

struct BandRatioReport {
  Real min_ratio_slack;   // min over 2q half-bands of ratio − (1 + λ^q(τ′−τ)/(4q²))
  Real diff_slack;        // selected j₀: length difference − (1−λ)λ^q(τ′−τ)/(4q³)
  int argmin_j = 0, argmin_xi = 0;
};
BandRatioReport band_ratio_check(const RationalFreq& pq, const Real& lambda,
                                 double tau, double tau_prime);

// Edges of S and S₋ as eigenvalues of the four q×q Bloch matrices
// (θ-offset ∈ {0, π/q} × corner ±1), LAPACK path; cross-check oracle for the
// bisection edges. Returns {S_edges_sorted, Sminus_edges_sorted}.
std::pair<std::vector<double>, std::vector<double>>
band_edges_eigen(const RationalFreq& pq, double lambda);

Real hausdorff_distance(const BandSet& A, const BandSet& B);
Real dist_to_set(const Real& E, const BandSet& A);

Real set_measure(const BandSet& A);
BandSet set_intersect(const BandSet& A, const BandSet& B);
BandSet set_union(const BandSet& A, const BandSet& B);
BandSet set_diff(const BandSet& A, const BandSet& B);
std::vector<Band> gaps(const BandSet& A);

}  // namespace amo
