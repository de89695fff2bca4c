#include "amo/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

namespace amo {

BoxOperator BoxOperator::finite(long a, long b, std::function<double(long)> V) {
  if (a > b) throw std::invalid_argument("box needs a <= b");
  BoxOperator box;
  box.a = a; box.b = b; box.V = std::move(V);
  return box;
}

BoxOperator BoxOperator::half(long a, std::function<double(long)> V,
                              long tail_period, long tail_start) {
  if (tail_period < 1) throw std::invalid_argument("half-line box needs a periodic tail");
  BoxOperator box;
  box.a = a; box.half_line = true; box.V = std::move(V);
  box.tail_period = tail_period;
  box.tail_start = std::max(tail_start, a);
  return box;
}

namespace {
std::function<double(long)> amo_potential(const RationalFreq& pq, double lambda,
                                          double theta) {
  double alpha = to_d(pq.value());
  return [alpha, lambda, theta](long n) {
    return 2 * lambda * std::cos(2 * M_PI * alpha * n + theta);
  };
}
}  // namespace

BoxOperator BoxOperator::amo_finite(long a, long b, const RationalFreq& pq,
                                    double lambda, double theta) {
  return finite(a, b, amo_potential(pq, lambda, theta));
}

BoxOperator BoxOperator::amo_half(long a, const RationalFreq& pq, double lambda,
                                  double theta) {
  return half(a, amo_potential(pq, lambda, theta), pq.q_long(), a);
}

// ---------------------------------------------------------------------------

GreenSolver::GreenSolver(const BoxOperator& box, Cd2 z, long max_site) {
  a_ = box.a;
  if (box.half_line) {
    if (max_site < box.a) throw std::invalid_argument("half-line solve needs max_site");
    long q = box.tail_period;
    // anchor the decaying Bloch solution two periods past the last request
    long s0 = std::max(max_site + 2, box.tail_start);
    s0 += (q - (s0 - box.tail_start) % q) % q;
    top_ = s0;
  } else {
    top_ = box.b;
  }
  long len = top_ - a_ + 1;
  u_.resize(len); lsu_.resize(len);
  v_.resize(len); lsv_.resize(len);

  // left solution, ψ(a−1) = 0 convention
  {
    Cd2 xp = 0, xc = 1;
    double L = 0;
    u_[0] = xc; lsu_[0] = 0;
    for (long k = a_; k < top_; ++k) {
      Cd2 xn = (z - box.V(k)) * xc - xp;
      xp = xc; xc = xn;
      double s = std::max(std::abs(xc), std::abs(xp));
      if (s > 0) { xc /= s; xp /= s; L += std::log(s); }
      u_[k + 1 - a_] = xc;
      lsu_[k + 1 - a_] = L;
    }
  }

  // right solution: zero boundary past b, or the contracting Bloch vector
  {
    Cd2 xc, xn;  // (v_top, v_{top+1})
    if (box.half_line) {
      long q = box.tail_period;
      // period transfer map over (top, top+q]: (ψ_{k}, ψ_{k−1}) → one period up
      Cd2 m11 = 1, m12 = 0, m21 = 0, m22 = 1;
      for (long k = top_ + 1; k <= top_ + q; ++k) {
        Cd2 t = z - box.V(k);
        Cd2 n11 = t * m11 + (-1.0) * m21, n12 = t * m12 + (-1.0) * m22;
        m21 = m11; m22 = m12; m11 = n11; m12 = n12;
      }
      Cd2 tr = m11 + m22;
      Cd2 disc = std::sqrt(tr * tr - 4.0);
      Cd2 mu1 = (tr + disc) / 2.0, mu2 = (tr - disc) / 2.0;
      Cd2 mu = std::abs(mu1) < std::abs(mu2) ? mu1 : mu2;
      if (std::abs(mu) >= 1.0 - 1e-12)
        throw std::runtime_error("half-line tail: period map is not contracting (z on spectrum?)");
      // eigenvector (ψ_{top+1}, ψ_top) of the period map for eigenvalue mu
      Cd2 w1, w0;
      if (std::abs(m12) > std::abs(m21)) { w1 = m12; w0 = mu - m11; }
      else { w1 = mu - m22; w0 = m21; }
      double s = std::max(std::abs(w1), std::abs(w0));
      xc = w0 / s; xn = w1 / s;
    } else {
      xc = 1; xn = 0;
    }
    double L = 0;
    v_[top_ - a_] = xc; lsv_[top_ - a_] = 0;
    for (long k = top_; k > a_; --k) {
      Cd2 xm = (z - box.V(k)) * xc - xn;
      xn = xc; xc = xm;
      double s = std::max(std::abs(xc), std::abs(xn));
      if (s > 0) { xc /= s; xn /= s; L += std::log(s); }
      v_[k - 1 - a_] = xc;
      lsv_[k - 1 - a_] = L;
    }
  }

  // Wronskian W = u_k v_{k+1} − u_{k+1} v_k at k = a (constant in k)
  if (top_ == a_) {
    // one-site box: W = u_a·v_{a+1} − u_{a+1}·v_a with v_{a+1} = 0, u_{a+1} = z−V(a)
    w_unit_ = -(z - box.V(a_));
    w_log_ = 0;
  } else {
    double e1 = lsu_[0] + lsv_[1], e2 = lsu_[1] + lsv_[0];
    double m = std::max(e1, e2);
    Cd2 t1 = u_[0] * v_[1] * std::exp(e1 - m);
    Cd2 t2 = u_[1] * v_[0] * std::exp(e2 - m);
    w_unit_ = t1 - t2;
    w_log_ = m;
    if (std::abs(w_unit_) < 1e-14 * (std::abs(t1) + std::abs(t2)))
      throw std::runtime_error("green: z within relative 1e-14 of a box eigenvalue");
  }
  if (w_unit_ == Cd2(0))
    throw std::runtime_error("green: singular Wronskian (z is a box eigenvalue)");
}

Cd2 GreenSolver::g(long n, long m) const {
  long i = std::min(n, m) - a_, j = std::max(n, m) - a_;
  if (i < 0 || j > top_ - a_) throw std::out_of_range("green: site outside box");
  double e = lsu_[i] + lsv_[j] - w_log_;
  return u_[i] * v_[j] / w_unit_ * std::exp(e);
}

double GreenSolver::log_abs_g(long n, long m) const {
  long i = std::min(n, m) - a_, j = std::max(n, m) - a_;
  if (i < 0 || j > top_ - a_) throw std::out_of_range("green: site outside box");
  double mag = std::abs(u_[i]) * std::abs(v_[j]) / std::abs(w_unit_);
  return std::log(mag) + lsu_[i] + lsv_[j] - w_log_;
}

Cd2 green_restricted(const BoxOperator& box, long n, long m, Cd2 z) {
  GreenSolver solver(box, z, std::max(n, m));
  return solver.g(n, m);
}

// ---------------------------------------------------------------------------

namespace {

struct SolverCache {
  const BoxOperator& base;
  Cd2 z;
  long max_site;
  std::map<std::pair<long, long>, std::unique_ptr<GreenSolver>> cache;

  // key (x, y): restriction [x, y]; y = LONG_MAX means "through the far end"
  GreenSolver& get(long x, long y) {
    auto it = cache.find({x, y});
    if (it != cache.end()) return *it->second;
    BoxOperator sub = base;
    sub.a = x;
    if (y != std::numeric_limits<long>::max()) {
      sub.b = y;
      sub.half_line = false;
    }
    auto solver = std::make_unique<GreenSolver>(sub, z, max_site);
    auto& ref = *solver;
    cache.emplace(std::make_pair(x, y), std::move(solver));
    return ref;
  }
};

constexpr long kFar = std::numeric_limits<long>::max();

}  // namespace

double green_identities_check(const BoxOperator& box, const std::vector<long>& cuts,
                              Cd2 z, int samples, std::uint64_t seed) {
  if (box.half_line) throw std::invalid_argument("identities checked on finite boxes");
  long a = box.a, b = box.b;
  for (long c : cuts)
    if (c <= a || c >= b) throw std::invalid_argument("cut outside the open box");
  std::vector<long> cs = cuts;
  std::sort(cs.begin(), cs.end());

  SolverCache sc{box, z, b, {}};
  std::mt19937_64 rng(seed);
  auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto& full = sc.get(a, b);
  double worst = 0;
  auto upd = [&](Cd2 lhs, Cd2 rhs) { worst = std::max(worst, std::abs(lhs - rhs)); };

  for (int s = 0; s < samples; ++s) {
    long c = cs[rng() % cs.size()];
    // split identities across the cut
    long m = pick(a, c), n = pick(c + 1, b);
    upd(full.g(m, n), -sc.get(a, c).g(m, c) * full.g(c + 1, n));
    upd(full.g(m, n), -full.g(m, c) * sc.get(c + 1, b).g(c + 1, n));
    // same-side perturbation identity
    long m2 = pick(a, c), n2 = pick(a, c);
    upd(full.g(m2, n2) - sc.get(a, c).g(m2, n2),
        -full.g(m2, c + 1) * sc.get(a, c).g(c, n2));
    // symmetry
    upd(full.g(m, n), full.g(n, m));
  }

  // multi-cut chain across all cuts
  if (!cs.empty() && cs.front() > a && cs.back() < b - 0) {
    for (int s = 0; s < samples; ++s) {
      long i = pick(a, cs.front() - 0);
      long j = pick(cs.back() + 1, b);
      if (i > cs.front() || j <= cs.back()) continue;
      Cd2 prod = 1;
      long cur_a = a, cur_i = i;
      for (size_t k = 0; k < cs.size(); ++k) {
        if (k % 2 == 0) {
          prod *= sc.get(cur_a, cs[k]).g(cur_i, cs[k]);
          cur_i = cs[k] + 1;
        } else {
          prod *= sc.get(cur_a, b).g(cur_i, cs[k]);
          cur_a = cs[k] + 1;
          cur_i = cs[k] + 1;
        }
      }
      prod *= sc.get(cur_a, b).g(cur_i, j);
      if (cs.size() % 2 == 1) prod = -prod;
      upd(full.g(i, j), prod);
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {
double dist_to_bands(Cd2 z, const BandSet& sigma) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& band : sigma.bands) {
    double lo = to_d(band.lo), hi = to_d(band.hi);
    double dx = z.real() < lo ? lo - z.real() : (z.real() > hi ? z.real() - hi : 0.0);
    best = std::min(best, std::hypot(dx, z.imag()));
  }
  return best;
}
}  // namespace

CTProfile combes_thomas_profile(const BoxOperator& box, Cd2 z, long n0, long range,
                                const BandSet& sigma) {
  if (range < 10) throw std::invalid_argument("combes_thomas_profile needs range >= 10");
  GreenSolver solver(box, z, n0 + range);
  CTProfile prof;
  prof.kappa = std::min(1.0, dist_to_bands(z, sigma));

  std::vector<double> xs, ys;
  for (long k = 1; k <= range; ++k) {
    double la = solver.log_abs_g(n0, n0 + k);
    if (la < -700) { prof.truncated = true; break; }
    xs.push_back(static_cast<double>(k));
    ys.push_back(la);
  }
  prof.usable_range = static_cast<long>(xs.size());
  if (prof.usable_range < 2)
    throw std::runtime_error("combes_thomas_profile: G underflows immediately");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
  }
  double nsz = static_cast<double>(xs.size());
  double slope = (nsz * sxy - sx * sy) / (nsz * sxx - sx * sx);
  prof.rate = -slope;
  prof.ratio = prof.kappa > 0 ? prof.rate / prof.kappa : 0;
  return prof;
}

// ---------------------------------------------------------------------------

SampleMeasure SampleMeasure::lebesgue(double lo, double hi) {
  SampleMeasure mu;
  mu.uniform.push_back({lo, hi, hi - lo});
  return mu;
}

SampleMeasure SampleMeasure::from_bands(const BandSet& K, double total_weight) {
  SampleMeasure mu;
  double len = to_d(K.measure());
  if (len <= 0) throw std::invalid_argument("from_bands: zero-length set");
  for (const auto& b : K.bands) {
    double lo = to_d(b.lo), hi = to_d(b.hi);
    if (hi > lo) mu.uniform.push_back({lo, hi, total_weight * (hi - lo) / len});
  }
  return mu;
}

double SampleMeasure::total() const {
  double t = 0;
  for (const auto& a : atoms) t += a.second;
  for (const auto& u : uniform) t += u[2];
  return t;
}

double log_kernel_integral(const SampleMeasure& mu, double E_prime, double eps) {
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("log_kernel needs ε in (0,1]");
  auto F = [&](double x) {
    // antiderivative of log(1 + ε²/x²)
    double lg = x == 0 ? 0.0 : x * std::log1p(eps * eps / (x * x));
    return lg + 2 * eps * std::atan(x / eps);
  };
  double total = 0;
  for (const auto& [E, w] : mu.atoms) {
    double d2 = (E - E_prime) * (E - E_prime);
    total += w * std::log1p(eps * eps / std::max(d2, 1e-300));
  }
  for (const auto& piece : mu.uniform) {
    double lo = piece[0], hi = piece[1], w = piece[2];
    if (!(hi > lo)) continue;
    total += w / (hi - lo) * (F(hi - E_prime) - F(lo - E_prime));
  }
  return total;
}

}  // namespace amo
