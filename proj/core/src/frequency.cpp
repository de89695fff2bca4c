#include "amo/frequency.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::gcd;
using boost::multiprecision::ceil;

RationalFreq::RationalFreq(Int pp, Int qq) {
  if (qq <= 0) throw std::invalid_argument("q must be >= 1");
  pp %= qq;
  if (pp < 0) pp += qq;
  Int g = gcd(pp, qq);
  if (g > 1) { pp /= g; qq /= g; }
  p = pp;
  q = qq;
}

long RationalFreq::q_long() const {
  if (q > Int(std::numeric_limits<long>::max()))
    throw std::overflow_error("denominator exceeds machine range");
  return q.convert_to<long>();
}

namespace {

// p_0/q_0 = 0/1, p_1/q_1 = 1/a_1, then p_{n+1} = a_{n+1} p_n + p_{n-1}.
void convergent_tables(const FrequencyCF& cf, int n_max,
                       std::vector<Int>& p, std::vector<Int>& q) {
  if (n_max > static_cast<int>(cf.a.size()))
    throw std::out_of_range("insufficient quotients");
  p.assign({Int(0)});
  q.assign({Int(1)});
  Int pm1(1), qm1(0);  // virtual index -1
  for (int n = 1; n <= n_max; ++n) {
    const Int& a = cf.a[n - 1];
    if (a < 1) throw std::invalid_argument("partial quotients must be >= 1");
    Int pn = a * p.back() + pm1;
    Int qn = a * q.back() + qm1;
    pm1 = p.back(); qm1 = q.back();
    p.push_back(pn); q.push_back(qn);
  }
}

}  // namespace

std::vector<RationalFreq> cf_convergents(const FrequencyCF& cf, int n_max) {
  std::vector<Int> p, q;
  convergent_tables(cf, n_max, p, q);
  std::vector<RationalFreq> out;
  out.reserve(p.size());
  for (size_t i = 0; i < p.size(); ++i) out.push_back(RationalFreq(p[i], q[i]));
  return out;
}

BetaEstimate beta_estimate(const FrequencyCF& cf, int depth) {
  if (depth < 2) throw std::invalid_argument("beta_estimate needs depth >= 2");
  if (depth > static_cast<int>(cf.a.size()))
    throw std::out_of_range("insufficient quotients");
  std::vector<Int> p, q;
  convergent_tables(cf, depth, p, q);
  BetaEstimate be;
  be.depth = depth;
  for (int n = 1; n + 1 <= depth; ++n) {
    double v = to_d(log(Real(q[n + 1])) / Real(q[n]));
    be.per_n.emplace_back(n, v);
    be.running_max = std::max(be.running_max, v);
  }
  return be;
}

std::pair<Real, Real> rational_gap(const FrequencyCF& cf, int n) {
  std::vector<Int> p, q;
  convergent_tables(cf, n + 1, p, q);
  Real qn(q[n]), qn1(q[n + 1]);
  return {Real(1) / (qn * (qn1 + qn)), Real(1) / (qn * qn1)};
}

namespace {

// Largest dyadic x = 2^-j (j >= 1) with ω(x)·log(1/x) <= bound, the condition
// compared in log space: log_eval(-j ln2) + ln(j ln2) <= ln_bound.
// The left side is eventually decreasing (admissible gauges); search the
// minimal satisfying j by doubling + binary search.
Int dyadic_threshold_exponent(const GaugeFn& gauge, const Real& ln_bound) {
  Real ln2 = log(Real(2));
  auto ok = [&](const Int& j) {
    Real jr(j);
    return gauge.log_eval(-jr * ln2) + log(jr * ln2) <= ln_bound;
  };
  Int lo = 1, hi = 2;
  int guard = 0;
  while (!ok(hi)) {
    lo = hi;
    hi *= 2;
    if (++guard > 4000) throw std::runtime_error("gauge too slow: threshold x_n not found");
  }
  // minimal j in (lo, hi] with ok(j); ok is monotone there
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Same search with a Real exponent, for levels too large for exact dyadics.
Real continuous_threshold_exponent(const GaugeFn& gauge, const Real& ln_bound) {
  Real ln2 = log(Real(2));
  auto val = [&](const Real& j) { return gauge.log_eval(-j * ln2) + log(j * ln2); };
  Real lo = 1, hi = 2;
  int guard = 0;
  while (val(hi) > ln_bound) {
    lo = hi;
    hi *= 2;
    if (++guard > 300000) throw std::runtime_error("gauge too slow: threshold x_n not found");
  }
  for (int it = 0; it < 200; ++it) {
    Real mid = (lo + hi) / 2;
    (val(mid) <= ln_bound ? hi : lo) = mid;
  }
  return hi;
}

Real ln_threshold_for(const Real& q_n, const Real& ln_one_over_x,
                      const GaugeFn& gauge, double lambda,
                      LiouvilleRecipe recipe, double C_const) {
  Real ln2 = log(Real(2));
  if (recipe == LiouvilleRecipe::haus_opt) {
    // max( 2 C₁ e^{q_n} log(1/x_n), 1/ω⁻¹(1/q_n²)² )
    Real t1 = log(Real(2) * C_const) + q_n + log(ln_one_over_x);
    Real t2 = -2 * gauge.log_inv(-2 * log(q_n));
    return std::max(t1, t2);
  }
  // ids_opt: max( q_n⁶ λ^{-2 q_n}, (C′ q_n/λ^{q_n}) log(5/x_n) )
  Real lnl = log(Real(lambda));
  Real t1 = 6 * log(q_n) - 2 * q_n * lnl;
  Real t2 = log(Real(C_const)) + log(q_n) - q_n * lnl + log(log(Real(5)) + ln_one_over_x);
  (void)ln2;
  return std::max(t1, t2);
}

Real ln_x_bound_for(const Real& q_n, double lambda, LiouvilleRecipe recipe) {
  if (recipe == LiouvilleRecipe::haus_opt) return -2 * q_n;
  return q_n * log(Real(lambda)) - 2 * log(q_n);
}

}  // namespace

FrequencyCF liouville_construct(const GaugeFn& gauge, double lambda,
                                FrequencyCF prefix, int levels,
                                LiouvilleRecipe recipe, double C_const,
                                std::vector<LiouvilleLevelTrace>* trace,
                                long max_bits) {
  if (lambda <= 0 || lambda > 1) throw std::invalid_argument("lambda must lie in (0,1]");
  PrecisionGuard guard(256);
  if (!gauge.decay_admissible())
    throw std::invalid_argument("gauge too slow: ω(s)log(1/s) does not decay on the test grid");
  if (prefix.a.empty()) throw std::invalid_argument("prefix must contain at least one quotient");

  std::vector<Int> p, q;
  convergent_tables(prefix, static_cast<int>(prefix.a.size()), p, q);

  for (int lv = 0; lv < levels; ++lv) {
    Int qn = q.back();
    Int qn_1 = q[q.size() - 2];
    Real qn_r(qn);
    Int j = dyadic_threshold_exponent(gauge, ln_x_bound_for(qn_r, lambda, recipe));
    Real ln_one_over_x = Real(j) * log(Real(2));
    Real lnT = ln_threshold_for(qn_r, ln_one_over_x, gauge, lambda, recipe, C_const);
    if (lnT > Real(max_bits) * log(Real(2)))
      throw std::overflow_error("liouville_construct: level " + std::to_string(lv + 1) +
                                " exceeds the integer capacity budget");
    // minimal a >= 1 with a·q_n + q_{n-1} >= T; exponentiate with enough
    // mantissa to make the ceiling exact at integer scale
    long t_bits = std::max(256L, static_cast<long>(to_d(lnT) * 1.4427) + 64);
    PrecisionGuard exp_guard(static_cast<unsigned>(std::min(t_bits, max_bits + 64)));
    Real T = exp(at_working_precision(lnT));
    Real ar = ceil((T - Real(qn_1)) / at_working_precision(qn_r));
    Int a = ar < 1 ? Int(1) : ar.convert_to<Int>();
    if (a < 1) a = 1;
    Int q_next = a * qn + qn_1;
    prefix.a.push_back(a);
    p.push_back(a * p.back() + p[p.size() - 2]);
    q.push_back(q_next);
    if (trace) trace->push_back({a, q_next, j, lnT});
  }
  return prefix;
}

Real liouville_next_log_threshold(const Real& q_in, const GaugeFn& gauge,
                                  double lambda, LiouvilleRecipe recipe,
                                  double C_const) {
  PrecisionGuard guard(256);
  Real q_val = at_working_precision(q_in);
  Real jx = continuous_threshold_exponent(gauge, ln_x_bound_for(q_val, lambda, recipe));
  Real ln_one_over_x = jx * log(Real(2));
  return ln_threshold_for(q_val, ln_one_over_x, gauge, lambda, recipe, C_const);
}

}  // namespace amo
