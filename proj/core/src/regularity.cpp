#include "amo/regularity.hpp"

#include <algorithm>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;
using boost::multiprecision::fabs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ω(2^{-k}) through the log-space evaluator (safe for any k)
double omega_dyadic(const GaugeFn& g, double k) {
  static const Real ln2 = log(Real(2));
  return to_d(exp(g.log_eval(-Real(k) * ln2)));
}

// Σ_{k>j} ω(2^{-k}) with a monotone tail bound; +inf when divergent.
double w2_tail(const GaugeFn& g, long j) {
  const double ln2 = std::log(2.0);
  if (g.kind() == GaugeFn::Kind::omega_tilde_t) {
    double t = g.t();
    if (t <= 0) return kInf;
    return std::exp2(-static_cast<double>(j + 1) * t) / (1 - std::exp2(-t));
  }
  if (g.kind() == GaugeFn::Kind::omega_t) {
    double t = g.t();
    if (t <= 1) return kInf;  // terms ~ (k ln2)^{-t}, p-series
    double sum = 0;
    for (long k = j + 1;; ++k) {
      sum += omega_dyadic(g, static_cast<double>(k));
      if (k * ln2 > 1) {
        // integral test on 1/(x ln2 - 1)^t beyond k
        double bound = std::pow(k * ln2 - 1, 1 - t) / ((t - 1) * ln2);
        if (bound <= 1e-3 * sum) return sum + bound;
      }
      if (k > j + 4000000) return kInf;
    }
  }
  // table gauge: geometric-ratio tail certificate
  double sum = 0, prev = -1;
  int flat = 0;
  for (long k = j + 1; k < j + 100000; ++k) {
    double term = omega_dyadic(g, static_cast<double>(k));
    if (term == 0) return sum;
    if (prev >= 0) {
      double r = term / prev;
      if (r >= 0.999) { if (++flat > 200) return kInf; }
      else {
        flat = 0;
        double bound = term * r / (1 - r);
        if (bound <= 1e-3 * (sum + term)) return sum + term + bound;
      }
    }
    sum += term;
    prev = term;
  }
  return kInf;
}

// Σ_{l>=1} l·ω(2^{-j l}); +inf when divergent.
double w3_tail(const GaugeFn& g, long j) {
  if (j == 0) return kInf;
  const double ln2 = std::log(2.0);
  if (g.kind() == GaugeFn::Kind::omega_tilde_t) {
    double t = g.t();
    if (t <= 0) return kInf;
    double x = std::exp2(-static_cast<double>(j) * t);
    return x / ((1 - x) * (1 - x));
  }
  if (g.kind() == GaugeFn::Kind::omega_t) {
    double t = g.t();
    if (t <= 2) return kInf;  // terms ~ l^{1-t}
    double sum = 0;
    for (long l = 1;; ++l) {
      sum += l * omega_dyadic(g, static_cast<double>(j) * l);
      double U = l * j * ln2 - 1;
      if (U > 1) {
        double bound = (std::pow(U, 2 - t) / (t - 2) + std::pow(U, 1 - t) / (t - 1)) /
                       ((j * ln2) * (j * ln2));
        if (bound <= 1e-3 * sum) return sum + bound;
      }
      if (l > 4000000) return kInf;
    }
  }
  double sum = 0, prev = -1;
  int flat = 0;
  for (long l = 1; l < 100000; ++l) {
    double term = l * omega_dyadic(g, static_cast<double>(j) * l);
    if (term == 0) return sum;
    if (prev >= 0) {
      double r = term / prev;
      if (r >= 0.999) { if (++flat > 200) return kInf; }
      else {
        flat = 0;
        double bound = term * r / (1 - r);
        if (bound <= 1e-3 * (sum + term)) return sum + term + bound;
      }
    }
    sum += term;
    prev = term;
  }
  return kInf;
}

}  // namespace

double w_transform(int i, const GaugeFn& g, long j) {
  if (j < 0) throw std::invalid_argument("w_transform needs j >= 0");
  PrecisionGuard guard(256);
  double finite = 0;
  if (i == 1 || i == 3) {
    for (long k = 0; k <= j; ++k)
      finite += std::exp2(-2.0 * (j - k)) * omega_dyadic(g, static_cast<double>(k));
  } else if (i == 2) {
    for (long k = 0; k <= j; ++k)
      finite += std::exp2(-1.0 * (j - k)) * omega_dyadic(g, static_cast<double>(k));
  } else {
    throw std::invalid_argument("w_transform index must be 1, 2 or 3");
  }
  if (i == 1) return finite;
  if (i == 2) return finite + w2_tail(g, j);
  if (j == 0) return finite;  // the j·Σ l ω(2^{-jl}) part vanishes
  double tail = w3_tail(g, j);
  return finite + static_cast<double>(j) * tail;
}

// ---------------------------------------------------------------------------

CoverCost hausdorff_content_upper(const std::vector<RationalFreq>& chain,
                                  const Real& lambda_in, const GaugeFn& gauge,
                                  std::vector<Real> deltas, long exact_cap) {
  if (chain.size() < 2) throw std::invalid_argument("cover chain needs >= 2 convergents");
  PrecisionGuard guard(512);
  Real lambda = at_working_precision(lambda_in);
  if (!(lambda > 0 && lambda <= 1)) throw std::invalid_argument("lambda must lie in (0,1]");
  size_t n_levels = chain.size() - 1;
  if (deltas.empty()) {
    for (size_t n = 1; n <= n_levels; ++n)
      deltas.push_back(exp(-Real(chain[n - 1].q) / 2));
  }
  if (deltas.size() != n_levels)
    throw std::invalid_argument("deltas must match the number of levels");

  const Real w3_c = Real(12) * sqrt(Real(2));
  CoverCost out;
  out.gauge = gauge.describe();

  for (size_t n = 1; n <= n_levels; ++n) {
    const Int& q = chain[n - 1].q;
    const Int& Q = chain[n].q;
    Real qr(q), Qr(Q);
    Real delta = at_working_precision(deltas[n - 1]);
    CoverLevel lvl;
    lvl.level = static_cast<int>(n);
    Real cost = 0, count = 0, scale = 0;

    // part (iii): edge fattenings X_n — 2·q_{n+1} intervals
    {
      Real ln_enc = n + 1 < chain.size() ? -(log(Qr) + log(Real(chain[n + 1].q)))
                                         : -2 * log(Qr);
      Real ln_w = log(w3_c) + ln_enc / 2;
      cost += 2 * Qr * exp(gauge.log_eval(ln_w));
      count += 2 * Qr;
      scale = std::max(scale, exp(ln_w));
    }

    bool bands_exact = Q <= exact_cap;
    bool jd_exact = q <= exact_cap;
    lvl.exact = bands_exact && jd_exact;

    JDeltaResult jd;
    if (jd_exact) jd = j_delta_set(chain[n - 1], lambda, delta);

    if (bands_exact && jd_exact) {
      // part (i): enumerated bands of S(p_{n+1}/q_{n+1}, λ) ∩ J_δ
      long Ql = chain[n].q_long();
      Real level = 2 + 2 * exp(Real(Ql) * log(lambda));
      BandSet S = level_set(chain[n], lambda, level);
      BandSet J;
      J.bands = jd.intervals;
      BandSet part = set_intersect(S, J);
      for (const auto& b : part.bands) {
        Real len = b.length();
        if (len <= 0) continue;
        cost += gauge.eval(len);
        count += 1;
        scale = std::max(scale, len);
      }
    } else {
      // part (i) bound: |S ∩ J_δ| <= q² δ^{-1} e^{-(Q/q)δ}, <= 2Q intervals
      Real ln_w = 2 * log(qr) - log(delta) - (Qr / qr) * delta;
      cost += 2 * Qr * exp(gauge.log_eval(ln_w));
      count += 2 * Qr;
      scale = std::max(scale, exp(ln_w));
    }

    if (jd_exact) {
      // part (ii): the enumerated intervals of J_δ^c
      for (const auto& b : jd.complement.bands) {
        Real len = b.length();
        if (len <= 0) continue;
        cost += gauge.eval(len);
        count += 1;
        scale = std::max(scale, len);
      }
    } else {
      // part (ii) bound: <= q intervals of total width 2eδ/q
      Real ln_w = log(Real(2)) + 1 + log(delta) - log(qr);
      cost += qr * exp(gauge.log_eval(ln_w));
      count += qr;
      scale = std::max(scale, exp(ln_w));
    }

    lvl.scale = scale;
    lvl.count = count;
    lvl.cost = cost;
    lvl.ln_cost = to_d(log(cost));
    out.levels.push_back(lvl);
  }
  return out;
}

// ---------------------------------------------------------------------------

double modulus_of_continuity(const std::vector<std::pair<double, double>>& samples,
                             const GaugeFn& gauge) {
  if (samples.size() < 2) throw std::invalid_argument("need >= 2 samples");
  PrecisionGuard guard(128);
  double best = 0;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t k = i + 1; k < samples.size(); ++k) {
      double dE = std::abs(samples[k].first - samples[i].first);
      if (dE <= 0 || dE > 1) continue;
      double df = std::abs(samples[k].second - samples[i].second);
      if (df == 0) continue;
      double w = to_d(gauge.eval(Real(dE)));
      if (w > 0) best = std::max(best, df / w);
    }
  return best;
}

// ---------------------------------------------------------------------------

namespace {
Real window_measure(const BandSet& K, const Real& E, const Real& eps) {
  Real lo = E - eps, hi = E + eps, m = 0;
  for (const auto& b : K.bands) {
    Real l = b.lo > lo ? b.lo : lo;
    Real h = b.hi < hi ? b.hi : hi;
    if (h > l) m += h - l;
  }
  return m;
}

bool in_set(const BandSet& K, const Real& x) {
  for (const auto& b : K.bands)
    if (x >= b.lo && x <= b.hi) return true;
  return false;
}
}  // namespace

std::vector<HomogPoint> homogeneity_profile(const BandSet& K,
                                            const std::vector<double>& eps_list,
                                            const GaugeFn* gauge) {
  if (K.empty()) throw std::invalid_argument("homogeneity_profile: empty set");
  PrecisionGuard guard(128);
  std::vector<Real> endpoints;
  for (const auto& b : K.bands) { endpoints.push_back(b.lo); endpoints.push_back(b.hi); }

  std::vector<HomogPoint> out;
  for (double eps_d : eps_list) {
    if (!(eps_d > 0)) throw std::invalid_argument("eps must be positive");
    Real eps(eps_d);
    std::vector<Real> cands = endpoints;
    for (const auto& x : endpoints)
      for (const Real& s : {x - eps, x + eps})
        if (in_set(K, s)) cands.push_back(s);
    double best = kInf;
    double argE = to_d(cands.front());
    for (const auto& E : cands) {
      if (!in_set(K, E)) continue;
      Real m = window_measure(K, E, eps);
      double r;
      if (gauge) r = m > 0 ? to_d(gauge->eval(m)) / eps_d : 0.0;
      else r = to_d(m) / eps_d;
      if (r < best) { best = r; argE = to_d(E); }
    }
    out.push_back({eps_d, best, argE});
  }
  return out;
}

// ---------------------------------------------------------------------------

double gamma_bar(double E, const RationalFreq& pq, double lambda) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  double disc = to_d(discriminant_eval(Real(E), pq, Real(lambda)));
  double lq = std::pow(lambda, static_cast<double>(q));
  long M = std::max<long>(64, 8 * q);
  double acc = 0;
  for (long i = 0; i < M; ++i) {
    double u = 2 * M_PI * i / M;  // u = qθ; γ depends on θ through cos qθ only
    double s = std::abs(disc - 2 * lq * std::cos(u)) / 2;
    if (s > 1) acc += std::log(s + std::sqrt(s * s - 1));
  }
  return acc / (M * q);
}

PWReport pw_sum(const RationalFreq& pq, double lambda) {
  if (!(lambda > 0 && lambda <= 1)) throw std::invalid_argument("lambda must lie in (0,1]");
  long q = pq.q_long();
  PWReport rep;
  std::vector<std::pair<double, double>> gap_list;
  {
    PrecisionGuard guard(precision_bits_for_q(q));
    Real level = 2 + 2 * exp(Real(q) * log(Real(lambda)));
    BandSet S = level_set(pq, Real(lambda), level);
    for (const auto& g : gaps(S)) {
      // touching bands re-open at sqrt-of-rounding width; treat those as closed
      if (g.length() <= Real(1e-12) * (1 + fabs(g.lo))) continue;
      gap_list.emplace_back(to_d(g.lo), to_d(g.hi));
    }
  }
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (auto [a, b] : gap_list) {
    // pre-scan: certified lower bound for the gap max
    const int N = 64;
    double best = -1, bestx = a;
    int besti = 0;
    std::vector<double> vals(N);
    for (int i = 0; i < N; ++i) {
      double x = a + (b - a) * (i + 0.5) / N;
      vals[i] = gamma_bar(x, pq, lambda);
      if (vals[i] > best) { best = vals[i]; bestx = x; besti = i; }
    }
    // golden-section refinement in the winner's bracket
    double lo = a + (b - a) * (std::max(0, besti - 1) + 0.5) / N;
    double hi = a + (b - a) * (std::min(N - 1, besti + 1) + 0.5) / N;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = gamma_bar(x1, pq, lambda), f2 = gamma_bar(x2, pq, lambda);
    for (int it = 0; it < 60 && hi - lo > 1e-12 * (1 + std::abs(lo)); ++it) {
      if (f1 < f2) {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = gamma_bar(x2, pq, lambda);
      } else {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = gamma_bar(x1, pq, lambda);
      }
    }
    double refined = std::max({best, f1, f2});
    (void)bestx;
    rep.per_gap.push_back(refined);
    rep.sum += refined;
  }
  return rep;
}

// ---------------------------------------------------------------------------

FrostmanResult frostman_measure(const BandSet& K, const GaugeFn& gauge,
                                int samples, std::uint64_t seed) {
  if (K.empty()) throw std::invalid_argument("frostman_measure: empty set");
  double x0 = to_d(K.hull_lo()), x1 = to_d(K.hull_hi());
  double diam = x1 - x0;
  if (!(diam > 0)) throw std::invalid_argument("frostman_measure: degenerate set");
  double min_len = diam;
  for (const auto& b : K.bands) {
    double l = to_d(b.length());
    if (l > 0) min_len = std::min(min_len, l);
  }
  int n_f = std::clamp(static_cast<int>(std::ceil(std::log2(diam / min_len))) + 2, 8, 22);
  long N = 1L << n_f;
  double w = diam / static_cast<double>(N);

  // uniform density on K at the finest scale
  std::vector<double> mass(N, 0.0);
  for (const auto& b : K.bands) {
    double lo = to_d(b.lo), hi = to_d(b.hi);
    long i0 = std::clamp(static_cast<long>((lo - x0) / w), 0L, N - 1);
    long i1 = std::clamp(static_cast<long>((hi - x0) / w), 0L, N - 1);
    for (long i = i0; i <= i1; ++i) {
      double cl = x0 + i * w, ch = cl + w;
      double ov = std::min(hi, ch) - std::max(lo, cl);
      if (ov > 0) mass[i] += ov;
    }
  }

  // cap fine-to-coarse at ω(cell width); scaling down preserves finer caps
  PrecisionGuard guard(128);
  for (int lvl = n_f; lvl >= 0; --lvl) {
    long cells = 1L << lvl;
    long span = N / cells;
    double width = diam / static_cast<double>(cells);
    double cap = to_d(gauge.eval(Real(width)));
    if (!(cap > 0)) throw std::runtime_error("frostman_measure: gauge vanishes at a working scale");
    for (long c = 0; c < cells; ++c) {
      double s = 0;
      for (long i = c * span; i < (c + 1) * span; ++i) s += mass[i];
      if (s > cap * (1 + 1e-12)) {
        double f = cap / s;
        for (long i = c * span; i < (c + 1) * span; ++i) mass[i] *= f;
      }
    }
  }

  FrostmanResult res;
  res.cell_width = w;
  std::vector<double> centers;
  for (long i = 0; i < N; ++i)
    if (mass[i] > 0) {
      res.atoms.emplace_back(x0 + (i + 0.5) * w, mass[i]);
      res.total += mass[i];
    }
  if (!(res.total > 0)) throw std::runtime_error("frostman_measure: zero total mass");

  // sampled certificate over intervals no shorter than the finest cell
  std::vector<double> prefix(res.atoms.size() + 1, 0.0);
  for (size_t i = 0; i < res.atoms.size(); ++i)
    prefix[i + 1] = prefix[i] + res.atoms[i].second;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double C = 0;
  for (int s = 0; s < samples; ++s) {
    double len = w * std::pow(diam / w, unif(rng));  // log-uniform in [w, diam]
    double a = x0 - w + unif(rng) * (diam + w);
    double b = a + len;
    auto lo_it = std::lower_bound(res.atoms.begin(), res.atoms.end(), a,
                                  [](const auto& at, double v) { return at.first < v; });
    auto hi_it = std::lower_bound(res.atoms.begin(), res.atoms.end(), b,
                                  [](const auto& at, double v) { return at.first < v; });
    double mu = prefix[hi_it - res.atoms.begin()] - prefix[lo_it - res.atoms.begin()];
    if (mu <= 0) continue;
    double om = to_d(gauge.eval(Real(len)));
    if (om > 0) C = std::max(C, mu / om);
  }
  res.certificate_C = C;
  return res;
}

}  // namespace amo
