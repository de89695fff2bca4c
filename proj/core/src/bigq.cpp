#include "amo/bigq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amo {

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

constexpr double kLn2 = 0.6931471805599453;

// v_j = 2λ cos(2π (p·j mod q)/q + θ), j = 1..q. The phase index is reduced
// modularly in integers; α·j in doubles drifts by the time q ~ 10^5.
std::vector<double> fine_potential(const RationalFreq& pq, double lambda,
                                   double theta) {
  long q = pq.q_long();
  long p = pq.p.convert_to<long>();
  std::vector<double> v(static_cast<size_t>(q));
  double w = 2 * M_PI / static_cast<double>(q);
  long r = 0;
  for (long j = 0; j < q; ++j) {
    r += p;
    if (r >= q) r -= q;
    v[static_cast<size_t>(j)] =
        2 * lambda * std::cos(w * static_cast<double>(r) + theta);
  }
  return v;
}

constexpr int kBatch = 64;

// Joint Δ / dΔ/dE transfer recurrence over a batch of real energies, doubles
// with power-of-two rescaling. Outputs mantissas (common scale per lane in
// ln_scale); val/der ratios are scale-free, which is what the Newton steps use.
struct BatchEval {
  const std::vector<double>& v;

  void operator()(const double* E, int B, double* val, double* der,
                  double* ln_scale) const {
    double a[kBatch], b[kBatch], c[kBatch], d[kBatch];
    double da[kBatch], db[kBatch], dc[kBatch], dd[kBatch];
    long ex[kBatch];
    for (int l = 0; l < B; ++l) {
      a[l] = 1; b[l] = 0; c[l] = 0; d[l] = 1;
      da[l] = db[l] = dc[l] = dd[l] = 0;
      ex[l] = 0;
    }
    long q = static_cast<long>(v.size());
    for (long j = 0; j < q; ++j) {
      double vj = v[static_cast<size_t>(j)];
      for (int l = 0; l < B; ++l) {
        double t = E[l] - vj;
        double na = t * a[l] - c[l];
        double nb = t * b[l] - d[l];
        double nda = a[l] + t * da[l] - dc[l];
        double ndb = b[l] + t * db[l] - dd[l];
        dc[l] = da[l]; dd[l] = db[l]; da[l] = nda; db[l] = ndb;
        c[l] = a[l]; d[l] = b[l]; a[l] = na; b[l] = nb;
      }
      if ((j & 15) == 15) {
        for (int l = 0; l < B; ++l) {
          double m = std::fabs(a[l]);
          m = std::max(m, std::fabs(b[l]));
          m = std::max(m, std::fabs(c[l]));
          m = std::max(m, std::fabs(d[l]));
          m = std::max(m, std::fabs(da[l]));
          m = std::max(m, std::fabs(db[l]));
          m = std::max(m, std::fabs(dc[l]));
          m = std::max(m, std::fabs(dd[l]));
          if (m > 1e120 || (m > 0 && m < 1e-120)) {
            int k = std::ilogb(m);
            double s = std::ldexp(1.0, -k);
            a[l] *= s; b[l] *= s; c[l] *= s; d[l] *= s;
            da[l] *= s; db[l] *= s; dc[l] *= s; dd[l] *= s;
            ex[l] += k;
          }
        }
      }
    }
    for (int l = 0; l < B; ++l) {
      val[l] = a[l] + d[l];
      der[l] = da[l] + dd[l];
      ln_scale[l] = static_cast<double>(ex[l]) * kLn2;
    }
  }
};

// Value-only variant for the sign scan (half the work of the joint kernel).
struct BatchEvalVal {
  const std::vector<double>& v;

  void operator()(const double* E, int B, double* val) const {
    double a[kBatch], b[kBatch], c[kBatch], d[kBatch];
    for (int l = 0; l < B; ++l) { a[l] = 1; b[l] = 0; c[l] = 0; d[l] = 1; }
    long q = static_cast<long>(v.size());
    for (long j = 0; j < q; ++j) {
      double vj = v[static_cast<size_t>(j)];
      for (int l = 0; l < B; ++l) {
        double t = E[l] - vj;
        double na = t * a[l] - c[l];
        double nb = t * b[l] - d[l];
        c[l] = a[l]; d[l] = b[l]; a[l] = na; b[l] = nb;
      }
      if ((j & 15) == 15) {
        for (int l = 0; l < B; ++l) {
          double m = std::max(std::max(std::fabs(a[l]), std::fabs(b[l])),
                              std::max(std::fabs(c[l]), std::fabs(d[l])));
          if (m > 1e120 || (m > 0 && m < 1e-120)) {
            double s = std::ldexp(1.0, -std::ilogb(m));
            a[l] *= s; b[l] *= s; c[l] *= s; d[l] *= s;
          }
        }
      }
    }
    for (int l = 0; l < B; ++l) val[l] = a[l] + d[l];
  }
};

void eval_points(const BatchEval& ev, const std::vector<double>& E,
                 std::vector<double>& val, std::vector<double>& der,
                 std::vector<double>& lnsc) {
  size_t n = E.size();
  val.resize(n); der.resize(n); lnsc.resize(n);
  for (size_t i = 0; i < n; i += kBatch) {
    int B = static_cast<int>(std::min<size_t>(kBatch, n - i));
    ev(E.data() + i, B, val.data() + i, der.data() + i, lnsc.data() + i);
  }
}

// #{Dirichlet eigenvalues of the q-site box < E} by Sturm pivot counting.
long dirichlet_count(const std::vector<double>& v, double E) {
  long neg = 0;
  double inv = 0;
  for (double vj : v) {
    double d = (vj - E) - inv;
    if (d == 0) d = -1e-300;
    if (d < 0) ++neg;
    inv = 1.0 / d;
  }
  return neg;
}

struct IntervalZeros {
  std::vector<double> zeros;
  std::vector<double> ln_der;  // ln|Δ'| at each zero
  long points = 0;
};

// Sign-change scan at `n` cells followed by lockstep bracketed Newton.
IntervalZeros scan_interval(const BatchEval& ev, double lo, double hi, long n) {
  IntervalZeros out;
  n = std::max<long>(n, 8);
  std::vector<double> grid(static_cast<size_t>(n + 1));
  double h = (hi - lo) / static_cast<double>(n);
  for (long i = 0; i <= n; ++i)
    grid[static_cast<size_t>(i)] = lo + h * static_cast<double>(i);
  grid.back() = hi;
  std::vector<double> val(grid.size());
  {
    BatchEvalVal evv{ev.v};
    for (size_t i = 0; i < grid.size(); i += kBatch) {
      int B = static_cast<int>(std::min<size_t>(kBatch, grid.size() - i));
      evv(grid.data() + i, B, val.data() + i);
    }
  }
  out.points = n + 1;

  struct Root { double x0, x1, cur; double f0; bool done = false; };
  std::vector<Root> roots;
  for (long i = 0; i < n; ++i) {
    auto u = static_cast<size_t>(i);
    if ((val[u] < 0) != (val[u + 1] < 0))
      roots.push_back({grid[u], grid[u + 1], 0.5 * (grid[u] + grid[u + 1]),
                       val[u]});
  }

  std::vector<size_t> active(roots.size());
  for (size_t i = 0; i < roots.size(); ++i) active[i] = i;
  std::vector<double> E, f, fp, fs;
  std::vector<double> final_lnder(roots.size(), 0.0);
  for (int it = 0; it < 60 && !active.empty(); ++it) {
    E.clear();
    for (size_t idx : active) E.push_back(roots[idx].cur);
    eval_points(ev, E, f, fp, fs);
    out.points += static_cast<long>(E.size());
    std::vector<size_t> next;
    for (size_t k = 0; k < active.size(); ++k) {
      Root& r = roots[active[k]];
      final_lnder[active[k]] =
          std::log(std::max(std::fabs(fp[k]), 1e-300)) + fs[k];
      if ((f[k] < 0) == (r.f0 < 0)) r.x0 = r.cur; else r.x1 = r.cur;
      double width = std::fabs(r.x1 - r.x0);
      // |z − z*| ~ 1e-11 keeps the relative Δ' error near q·1e-11, plenty for
      // the band-width sum; no need to bisect down to double resolution.
      double tol = 1e-11 * (1 + std::fabs(r.cur));
      if (f[k] == 0 || width <= tol) {
        if (f[k] != 0) r.cur = 0.5 * (r.x0 + r.x1);
        continue;
      }
      double nx = fp[k] != 0 ? r.cur - f[k] / fp[k] : r.cur;
      double a = std::min(r.x0, r.x1), b = std::max(r.x0, r.x1);
      bool ok = nx > a && nx < b;
      if (ok && std::fabs(nx - r.cur) <= tol) { r.cur = nx; continue; }
      r.cur = ok ? nx : 0.5 * (r.x0 + r.x1);
      next.push_back(active[k]);
    }
    active.swap(next);
  }
  for (size_t i = 0; i < roots.size(); ++i) {
    out.zeros.push_back(roots[i].cur);
    out.ln_der.push_back(final_lnder[i]);
  }
  return out;
}

}  // namespace

double lyapunov_fine(std::complex<double> z, const RationalFreq& fine,
                     double lambda, double theta) {
  long q = fine.q_long();
  auto v = fine_potential(fine, lambda, theta);
  std::complex<double> a(1, 0), b(0, 0), c(0, 0), d(1, 0);
  double ls = 0;
  for (long j = 0; j < q; ++j) {
    std::complex<double> t = z - v[static_cast<size_t>(j)];
    std::complex<double> na = t * a - c;
    std::complex<double> nb = t * b - d;
    c = a; d = b; a = na; b = nb;
    if ((j & 15) == 15) {
      double m = std::max({std::fabs(a.real()), std::fabs(a.imag()),
                           std::fabs(b.real()), std::fabs(b.imag()),
                           std::fabs(c.real()), std::fabs(c.imag()),
                           std::fabs(d.real()), std::fabs(d.imag())});
      int k = std::ilogb(m);
      if (k > 200 || k < -200) {
        double s = std::ldexp(1.0, -k);
        a *= s; b *= s; c *= s; d *= s;
        ls += static_cast<double>(k) * kLn2;
      }
    }
  }
  // True period map is e^{ls}·M̂ with det = 1, so det M̂ = e^{-2ls}; the
  // spectral radius comes from the stored trace. When e^{-2ls} underflows the
  // large eigenvalue is the trace itself, which is the right limit.
  std::complex<double> h = 0.5 * (a + d);
  std::complex<double> disc = std::sqrt(h * h - std::exp(-2 * ls));
  double m = std::max(std::abs(h + disc), std::abs(h - disc));
  double g = (ls + std::log(std::max(m, 1e-300))) / static_cast<double>(q);
  return std::max(0.0, g);
}

FineMeasure fine_intersection_measure(const RationalFreq& coarse,
                                      const RationalFreq& fine, double lambda,
                                      double delta) {
  long qc = coarse.q_long();
  long qf = fine.q_long();
  if (delta <= 0) throw std::invalid_argument("fine_intersection_measure: delta <= 0");

  // Coarse geometry at the usual mpfr policy: scan domain = J_δ intersected
  // with the coarse shell {2−2λ^q+δ < |Δ| <= 2+2λ^q} fattened by the
  // Hausdorff-continuity width for |α−α′|.
  std::vector<std::pair<double, double>> domain;
  {
    PrecisionGuard guard(precision_bits_for_q(qc));
    Real lam(lambda);
    Real lamq = pow(lam, static_cast<unsigned>(qc));
    auto sk = discr_skeleton(coarse, lam);
    BandSet splus = level_set(sk, 2 + 2 * lamq);
    auto jd = j_delta_set(coarse, lam, Real(delta));
    BandSet shell =
        Real(delta) < 4 * lamq ? set_diff(splus, jd.complement) : splus;

    Real gap = abs(Real(coarse.p) * Real(fine.q) - Real(fine.p) * Real(coarse.q)) /
               (Real(coarse.q) * Real(fine.q));
    Real w = 6 * sqrt(4 * pi_real() * lam * gap) + Real(1e-12);
    BandSet fat;
    fat.pq = coarse; fat.lambda = lam;
    for (const Band& b : shell.bands) {
      Band nb{b.lo - w, b.hi + w};
      if (!fat.bands.empty() && nb.lo <= fat.bands.back().hi)
        fat.bands.back().hi = nb.hi;
      else
        fat.bands.push_back(nb);
    }

    BandSet jset;
    jset.pq = coarse; jset.lambda = lam;
    jset.bands = jd.intervals;
    BandSet D = set_intersect(jset, fat);
    for (const Band& b : D.bands) {
      double a = to_d(b.lo), bb = to_d(b.hi);
      double pad = 1e-12 * (1 + std::max(std::fabs(a), std::fabs(bb)));
      a -= pad; bb += pad;
      if (!domain.empty() && a <= domain.back().second)
        domain.back().second = bb;
      else
        domain.emplace_back(a, bb);
    }
  }

  auto v = fine_potential(fine, lambda, M_PI / (2 * static_cast<double>(qf)));
  BatchEval ev{v};

  FineMeasure out;
  out.domain = domain;
  std::vector<double> ln_widths;
  for (auto [lo, hi] : domain) {
    long nd = dirichlet_count(v, hi) - dirichlet_count(v, lo);
    // pitch ~ 1/5 of the expected zero spacing, floor 1 cell per 1/q̃ of
    // length; the Dirichlet cross-check triggers a 4× rescan on a miss
    long n = std::max<long>(5 * (nd + 4),
                            static_cast<long>((hi - lo) * static_cast<double>(qf)) + 1);
    IntervalZeros iz;
    long defect = 0;
    for (int attempt = 0;; ++attempt) {
      iz = scan_interval(ev, lo, hi, n);
      defect = std::max<long>(
          0, std::labs(static_cast<long>(iz.zeros.size()) - nd) - 2);
      if (defect == 0 || attempt >= 2) break;
      n *= 4;
    }
    out.sturm_defect += defect;
    out.zero_count += static_cast<long>(iz.zeros.size());
    out.scan_points += static_cast<double>(iz.points);
    for (double ld : iz.ln_der) ln_widths.push_back(std::log(4.0) - ld);
  }

  if (ln_widths.empty()) {
    out.ln_measure = -std::numeric_limits<double>::infinity();
    out.measure = 0;
    return out;
  }
  double m = *std::max_element(ln_widths.begin(), ln_widths.end());
  double s = 0;
  for (double x : ln_widths) s += std::exp(x - m);
  out.ln_measure = m + std::log(s);
  out.measure = out.ln_measure > -700 ? std::exp(out.ln_measure) : 0.0;
  return out;
}

}  // namespace amo
