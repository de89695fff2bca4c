#pragma once
// Continued-fraction arithmetic: convergents, β(α) running estimates,
// rigorous |α - p/q| enclosures, and the explicit Liouville-type frequency
// recipes (the q_{n+1} growth conditions driving the Hausdorff-cover and
// IDS-optimality constructions).

#include "prec.hpp"
#include "gauge.hpp"
#include <vector>
#include <utility>
#include <optional>

namespace amo {

struct RationalFreq {
  Int p{0}, q{1};  // reduced, 0 <= p < q

  RationalFreq() = default;
  RationalFreq(Int pp, Int qq);  // reduces and normalizes mod 1
  long q_long() const;           // throws if q exceeds long
  Real value() const { return Real(p) / Real(q); }
  bool operator==(const RationalFreq& o) const { return p == o.p && q == o.q; }
};

struct FrequencyCF {
  // Partial quotients a_1, a_2, ... (a_0 = 0, so α ∈ (0,1)); every a_k >= 1.
  std::vector<Int> a;

  size_t prefix_len() const { return a.size(); }
};

struct BetaEstimate {
  std::vector<std::pair<int, double>> per_n;  // (n, ln q_{n+1} / q_n)
  double running_max = 0;
  int depth = 0;
};

// p_0/q_0 = 0/1 through p_n/q_n via the standard recurrence.
// n_max must not exceed the materialized prefix.
std::vector<RationalFreq> cf_convergents(const FrequencyCF& cf, int n_max);

BetaEstimate beta_estimate(const FrequencyCF& cf, int depth);

// Standard convergent enclosure 1/(q_n(q_{n+1}+q_n)) <= |α - p_n/q_n| <= 1/(q_n q_{n+1}).
// Requires quotients up to n+1.
std::pair<Real, Real> rational_gap(const FrequencyCF& cf, int n);

enum class LiouvilleRecipe {
  haus_opt,  // x_n: ω(x)log(1/x) <= e^{-2 q_n};   q_{n+1} >= max(2 C₁ e^{q_n} log(1/x_n), 1/ω⁻¹(1/q_n²)²)
  ids_opt,   // x_n: ω(x)log(1/x) <= λ^{q_n}/q_n²; q_{n+1} >= max(q_n⁶ λ^{-2q_n}, (C′ q_n/λ^{q_n}) log(5/x_n))
};

struct LiouvilleLevelTrace {
  Int a_next, q_next;
  Int x_log2;       // threshold x_n = 2^{-x_log2}
  Real ln_threshold;  // ln of the q_{n+1} lower bound actually enforced
};

// Extends `prefix` by `levels` quotients, each minimal subject to the recipe
// (thresholds evaluated at the current working precision with rounding in the
// safe direction). Throws if the gauge fails the ω(s)log(1/s) → 0 precondition
// or if a level's denominator would exceed max_bits.
FrequencyCF liouville_construct(const GaugeFn& gauge, double lambda,
                                FrequencyCF prefix, int levels,
                                LiouvilleRecipe recipe, double C_const = 1.0,
                                std::vector<LiouvilleLevelTrace>* trace = nullptr,
                                long max_bits = 2000000);

// ln of the recipe's lower bound for the quotient following a (possibly
// virtual) level with denominator value q_val (supplied as a Real so levels
// too large to materialize can still be chained in log space).
Real liouville_next_log_threshold(const Real& q_val, const GaugeFn& gauge,
                                  double lambda, LiouvilleRecipe recipe,
                                  double C_const = 1.0);

}  // namespace amo
