#pragma once
// Scale-regularity toolbox: W-transforms of gauges, Hausdorff-content upper
// bounds along convergent chains (three-part covers with certified bound
// fallbacks at scales where exact band enumeration is impossible), modulus of
// continuity over sample sets, homogeneity profiles, Parreau–Widom sums over
// gaps, and Frostman measures with sampled certificates.

#include "gauge.hpp"
#include "frequency.hpp"
#include "spectrum.hpp"
#include <vector>

namespace amo {

// (W_i ω)(2^{-j}). Divergent tails (W₂ for ω_t with t <= 1, W₃ for t <= 2)
// return +inf; convergent tails are truncated once the monotone tail bound
// drops below 1e-3 of the partial sum, and the bound itself is added so the
// result stays an upper bound.
double w_transform(int i, const GaugeFn& g, long j);

struct CoverLevel {
  int level = 0;       // 1-based position along the chain
  Real scale;          // largest cover-interval length (bound in bound mode)
  Real count;          // number of cover intervals (can exceed long range)
  Real cost;           // Σ ω(lengths), upper bound in bound mode
  double ln_cost = 0;  // log of cost, finite even when cost underflows double
  bool exact = false;  // true when built from enumerated bands
};

struct CoverCost {
  std::vector<CoverLevel> levels;
  std::string gauge;
};

// Three-part cover of the limit spectrum along a convergent chain
// q_1 < q_2 < …: at level n the enclosure is
//   (S(p_{n+1}/q_{n+1}, λ) ∩ J_δ_n)  ∪  J_δ_n^c  ∪  X_n,
// with J_δ taken at level n and X_n the 2q_{n+1} edge fattenings of width
// 12√2·√|α − p_{n+1}/q_{n+1}|, enclosed by 1/(q_{n+1}q_{n+2}) when the chain
// supplies q_{n+2} and by 1/q_{n+1}² otherwise. Levels with q_{n+1} beyond
// exact_cap use certified bound terms evaluated in log space instead of
// enumerated bands. deltas: per-level δ (default e^{-q_n/2}).
CoverCost hausdorff_content_upper(const std::vector<RationalFreq>& chain,
                                  const Real& lambda, const GaugeFn& gauge,
                                  std::vector<Real> deltas = {},
                                  long exact_cap = 600);

// max over sample pairs with 0 < |ΔE| <= 1 of |Δf| / ω(|ΔE|).
double modulus_of_continuity(const std::vector<std::pair<double, double>>& samples,
                             const GaugeFn& gauge);

struct HomogPoint {
  double eps;
  double min_ratio;
  double argmin_E;
};
// Per ε: min over E ∈ K of |(E−ε, E+ε) ∩ K| / ε, or ω(|…∩K|)/ε in gauge
// mode. The minimum of the piecewise-affine window measure is attained on the
// finite candidate set {band endpoints} ∪ {endpoint ± ε clipped into K}.
std::vector<HomogPoint> homogeneity_profile(const BandSet& K,
                                            const std::vector<double>& eps_list,
                                            const GaugeFn* gauge = nullptr);

struct PWReport {
  double sum = 0;
  std::vector<double> per_gap;  // max of γ̄ over each open gap
};
// Parreau–Widom sum of S(p/q, λ): per gap, the max of the θ-averaged
// Lyapunov exponent (64-point pre-scan + golden-section refinement; the
// pre-scan max is a certified lower bound).
PWReport pw_sum(const RationalFreq& pq, double lambda);

// θ-averaged Lyapunov exponent at real E from the discriminant: for each θ,
// γ = (1/q)·ln spr of the period map with |Tr| = |Δ(E) − 2λ^q cos qθ|.
double gamma_bar(double E, const RationalFreq& pq, double lambda);

struct FrostmanResult {
  std::vector<std::pair<double, double>> atoms;  // (center, mass)
  double cell_width = 0;   // finest dyadic scale
  double total = 0;        // μ(K) > 0
  double certificate_C = 0;  // max sampled μ(a,b)/ω(b−a), lengths >= cell_width
};
// Bottom-up dyadic mass distribution on K capped at ω(cell width) per cell;
// the certificate constant is sampled, not proven.
FrostmanResult frostman_measure(const BandSet& K, const GaugeFn& gauge,
                                int samples = 10000, std::uint64_t seed = 7);

}  // namespace amo
