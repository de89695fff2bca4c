#include "amo/spectrum.hpp"
#include "amo/cocycle.hpp"
#include "inertia.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <algorithm>
#include <stdexcept>

extern "C" {
void dsyev_(const char* jobz, const char* uplo, const int* n, double* a,
            const int* lda, double* w, double* work, const int* lwork, int* info);
}

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::sqrt;
using boost::multiprecision::pow;
using boost::multiprecision::cos;
using boost::multiprecision::fabs;

namespace {

Real lambda_pow_q(const Real& lambda_in, long q) {
  Real lambda = at_working_precision(lambda_in);
  // λ^q via log space; exact for λ = 1
  if (lambda == 1) return Real(1);
  return exp(Real(q) * log(lambda));
}

// Potential sample at the discriminant phase θ* = π/(2q).
struct Potential {
  std::vector<Real> v;
  explicit Potential(const RationalFreq& pq, const Real& lambda_in, const Real& theta_in) {
    long q = pq.q_long();
    Real lambda = at_working_precision(lambda_in);
    Real theta_offset = at_working_precision(theta_in);
    Real two_pi = 2 * pi_real();
    Real alpha = pq.value();
    v.resize(q);
    for (long j = 0; j < q; ++j)
      v[j] = 2 * lambda * cos(two_pi * alpha * (j + 1) + theta_offset);
  }
};

}  // namespace

Real discriminant_eval(const Real& E, const RationalFreq& pq, const Real& lambda) {
  Real val, der;
  discriminant_deriv(E, pq, lambda, val, der);
  return val;
}

void discriminant_deriv(const Real& E_in, const RationalFreq& pq, const Real& lambda,
                        Real& value, Real& deriv) {
  long q = pq.q_long();
  Real E = at_working_precision(E_in);
  Real theta_star = pi_real() / (2 * q);
  Potential pot(pq, lambda, theta_star);
  // Φ = T_q⋯T_1 and dΦ/dE jointly; T' = [[1,0],[0,0]].
  Real a(1), b(0), c(0), d(1);          // Φ
  Real da(0), db(0), dc(0), dd(0);      // dΦ/dE
  for (long j = 0; j < q; ++j) {
    Real t = E - pot.v[j];
    Real na = t * a - c, nb = t * b - d;
    Real nda = a + t * da - dc, ndb = b + t * db - dd;
    dc = da; dd = db; da = nda; db = ndb;
    c = a; d = b; a = na; b = nb;
  }
  value = a + d;
  deriv = da + dd;
}

CReal discriminant_eval(const CReal& E_in, const RationalFreq& pq, const Real& lambda) {
  long q = pq.q_long();
  CReal E{at_working_precision(E_in.re), at_working_precision(E_in.im)};
  Real theta_star = pi_real() / (2 * q);
  Potential pot(pq, lambda, theta_star);
  CReal one(Real(1)), a = one, b{Real(0), Real(0)}, c = b, d = one;
  for (long j = 0; j < q; ++j) {
    CReal t = E - CReal(pot.v[j]);
    CReal na = t * a - c, nb = t * b - d;
    c = a; d = b; a = na; b = nb;
  }
  return a + d;
}

Real chambers_residual(const RationalFreq& pq, const Real& lambda,
                       const std::vector<Real>& E_grid,
                       const std::vector<Real>& theta_grid) {
  if (E_grid.empty() || theta_grid.empty())
    throw std::invalid_argument("chambers_residual: empty grid");
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lam_q = lambda_pow_q(lambda, q);
  Real worst(0);
  for (const Real& E_raw : E_grid) {
    Real E = at_working_precision(E_raw);
    Real delta = discriminant_eval(E, pq, lambda);
    for (const Real& th_raw : theta_grid) {
      Real th = at_working_precision(th_raw);
      ScaledMat2 m = transfer_product(CReal(E), pq, lambda, th, q);
      CReal tr = m.trace_true();
      Real res = fabs(tr.re - delta + 2 * lam_q * cos(Real(q) * th));
      if (res > worst) worst = res;
    }
  }
  return worst;
}

// --------------------------------------------------------------------------
// Zero counting: #zeros of Δ below E = #eigenvalues below E of the Hermitian
// q×q matrix at phase θ* with Floquet corner e^{iφ}, φ = π/2 (Δ = 2cos φ = 0
// level). Bordered LDL inertia; corner fill tracked down the last column.

namespace {

// Zeros of Δ sit at (θ*, φ = π/2): corner e^{-iφ} = −i in the Floquet matrix.
long zero_count_below(const Potential& pot, const Real& E, long q) {
  (void)q;
  return detail::inertia_count_below(pot.v, E, CReal{Real(0), Real(-1)});
}

struct DiscrCtx {
  RationalFreq pq;
  Real lambda;
  long q;
  Potential pot;
  DiscrCtx(const RationalFreq& pq_, const Real& lambda_)
      : pq(pq_), lambda(at_working_precision(lambda_)), q(pq_.q_long()),
        pot(pq_, lambda_, pi_real() / (2 * pq_.q_long())) {}
  void eval2(const Real& E, Real& val, Real& der) const {
    // joint Δ and dΔ/dE over the cached potential (rebuilding the potential
    // per call would dominate: q cosines at working precision)
    Real a(1), b(0), c(0), d(1);
    Real da(0), db(0), dc(0), dd(0);
    for (long j = 0; j < q; ++j) {
      Real t = E - pot.v[j];
      Real na = t * a - c, nb = t * b - d;
      Real nda = a + t * da - dc, ndb = b + t * db - dd;
      dc = da; dd = db; da = nda; db = ndb;
      c = a; d = b; a = na; b = nb;
    }
    val = a + d;
    der = da + dd;
  }
  // value, first and second derivative (for extremum refinement)
  void eval3(const Real& E, Real& val, Real& der, Real& der2) const {
    Real a(1), b(0), c(0), d(1);
    Real da(0), db(0), dc(0), dd(0);
    Real ea(0), eb(0), ec(0), ed(0);
    for (long j = 0; j < q; ++j) {
      Real t = E - pot.v[j];
      Real na = t * a - c, nb = t * b - d;
      Real nda = a + t * da - dc, ndb = b + t * db - dd;
      Real nea = 2 * da + t * ea - ec, neb = 2 * db + t * eb - ed;
      ec = ea; ed = eb; ea = nea; eb = neb;
      dc = da; dd = db; da = nda; db = ndb;
      c = a; d = b; a = na; b = nb;
    }
    val = a + d; der = da + dd; der2 = ea + eb * 0 + ed;  // trace of each
    der2 = ea + ed;
  }
};

// Solve Δ(E) = target on a monotone piece with a sign-changing bracket:
// bisection-safeguarded Newton to ~(working precision − 16) bits.
Real solve_monotone(const DiscrCtx& ctx, Real lo, Real hi, const Real& target_in) {
  Real target = at_working_precision(target_in);
  Real flo, fhi, d_unused;
  ctx.eval2(lo, flo, d_unused);
  ctx.eval2(hi, fhi, d_unused);
  flo -= target;
  fhi -= target;
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  int lo_sign = flo < 0 ? -1 : 1;
  // no interior sign change: the root sits (up to rounding noise) at an
  // endpoint — e.g. a counting bracket whose zero is exactly its lower end
  if ((fhi < 0 ? -1 : 1) == lo_sign)
    return fabs(flo) <= fabs(fhi) ? lo : hi;
  Real eps = pow(Real(2), -static_cast<int>(Real::default_precision() * 3.32) + 16);
  Real x = (lo + hi) / 2;
  Real best_f, best_x = x;
  bool have_best = false;
  int stall = 0;
  for (int it = 0; it < 30000; ++it) {
    Real f, df;
    ctx.eval2(x, f, df);
    f -= target;
    if (f == 0) return x;
    // |Δ − target| is monotone toward the root on this piece; once it stops
    // improving we are bisecting rounding noise — return the best point seen
    if (!have_best || fabs(f) < best_f) {
      best_f = fabs(f); best_x = x; have_best = true; stall = 0;
    } else if (++stall >= 8) {
      return best_x;
    }
    // shrink the bracket
    if ((f < 0 ? -1 : 1) == lo_sign) lo = x; else hi = x;
    Real width = hi - lo;
    if (width <= eps * (1 + fabs(x))) break;
    Real nx = x;
    bool newton_ok = false;
    if (df != 0) {
      nx = x - f / df;
      newton_ok = (nx > lo && nx < hi);
    }
    // converged Newton step: the bracket may still be wide (one-sided
    // approach), so terminate on the step size as well
    if (newton_ok && fabs(nx - x) <= eps * (1 + fabs(x))) return nx;
    x = newton_ok ? nx : (lo + hi) / 2;
  }
  return (lo + hi) / 2;
}

// Refine an extremum of Δ inside (lo, hi) where Δ' changes sign.
Real refine_extremum(const DiscrCtx& ctx, Real lo, Real hi) {
  Real v, d, d2;
  ctx.eval3(lo, v, d, d2);
  int lo_sign = d < 0 ? -1 : 1;
  Real eps = pow(Real(2), -static_cast<int>(Real::default_precision() * 3.32) + 24);
  Real x = (lo + hi) / 2;
  Real best_d, best_x = x;
  bool have_best = false;
  int stall = 0;
  for (int it = 0; it < 30000; ++it) {
    ctx.eval3(x, v, d, d2);
    if (d == 0) return x;
    if (!have_best || fabs(d) < best_d) {
      best_d = fabs(d); best_x = x; have_best = true; stall = 0;
    } else if (++stall >= 8) {
      return best_x;
    }
    if ((d < 0 ? -1 : 1) == lo_sign) lo = x; else hi = x;
    Real width = hi - lo;
    if (width <= eps * (1 + fabs(x))) break;
    Real nx = x;
    bool ok = false;
    if (d2 != 0) {
      nx = x - d / d2;
      ok = (nx > lo && nx < hi);
    }
    if (ok && fabs(nx - x) <= eps * (1 + fabs(x))) return nx;
    x = ok ? nx : (lo + hi) / 2;
  }
  return (lo + hi) / 2;
}

}  // namespace

DiscrSkeleton discr_skeleton(const RationalFreq& pq, const Real& lambda_in) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lambda = at_working_precision(lambda_in);
  DiscrCtx ctx(pq, lambda);

  DiscrSkeleton sk;
  sk.pq = pq;
  sk.lambda = lambda;
  // outside the bracket |Δ| >= (4.1 + 2λ)^q >= 4.1^q + (2λ)^q > 2 + 2λ^q,
  // so every level set of interest lies inside. Asymmetric margins keep the
  // bisection midpoint lattice off symmetric zeros (Δ even/odd cases put a
  // zero exactly at the hull center).
  Real span = 2 + 2 * lambda;
  sk.bracket_lo = -span - Real("4.109375") - 2 * lambda;
  sk.bracket_hi = span + Real("4.140625") + 2 * lambda;

  // isolate the q zeros by divide and conquer on the counting function,
  // then polish each with the sign-bracketed Newton solver
  struct Seg { Real lo, hi; long nlo, nhi; };
  std::vector<Seg> work{{sk.bracket_lo, sk.bracket_hi, 0, q}};
  std::vector<std::pair<Real, Real>> brackets;  // one zero each
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    long k = s.nhi - s.nlo;
    if (k <= 0) continue;
    if (k == 1) {
      brackets.emplace_back(s.lo, s.hi);
      continue;
    }
    Real mid = (s.lo + s.hi) / 2;
    long nm = zero_count_below(ctx.pot, mid, q);
    work.push_back({s.lo, mid, s.nlo, nm});
    work.push_back({mid, s.hi, nm, s.nhi});
  }
  std::sort(brackets.begin(), brackets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& br : brackets)
    sk.zeros.push_back(solve_monotone(ctx, br.first, br.second, Real(0)));
  std::sort(sk.zeros.begin(), sk.zeros.end());

  for (long j = 0; j + 1 < q; ++j)
    sk.extrema.push_back(refine_extremum(ctx, sk.zeros[j], sk.zeros[j + 1]));
  return sk;
}

Real BandSet::measure() const {
  Real m(0);
  for (const auto& b : bands) m += b.hi - b.lo;
  return m;
}

BandSet range_set(const DiscrSkeleton& sk, const Real& lo_in, const Real& hi_in) {
  long q = sk.pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lo_level = at_working_precision(lo_in);
  Real hi_level = at_working_precision(hi_in);
  DiscrCtx ctx(sk.pq, sk.lambda);
  BandSet out;
  out.pq = sk.pq;
  out.lambda = sk.lambda;

  // monotone pieces delimited by the extrema (each contains one zero of Δ)
  for (long j = 0; j < q; ++j) {
    Real a = (j == 0) ? sk.bracket_lo : sk.extrema[j - 1];
    Real b = (j == q - 1) ? sk.bracket_hi : sk.extrema[j];
    Real va, vb, du;
    ctx.eval2(a, va, du);
    ctx.eval2(b, vb, du);
    bool incr = va < vb;
    Real piece_min = incr ? va : vb, piece_max = incr ? vb : va;
    Real wlo = std::max(lo_level, piece_min), whi = std::min(hi_level, piece_max);
    if (wlo > whi) continue;
    Real e1, e2;
    if (incr) {
      e1 = (va >= lo_level) ? a : solve_monotone(ctx, a, b, lo_level);
      e2 = (vb <= hi_level) ? b : solve_monotone(ctx, a, b, hi_level);
    } else {
      e1 = (va <= hi_level) ? a : solve_monotone(ctx, a, b, hi_level);
      e2 = (vb >= lo_level) ? b : solve_monotone(ctx, a, b, lo_level);
    }
    if (e1 > e2) std::swap(e1, e2);
    out.bands.push_back({e1, e2});
  }
  return out;
}

BandSet level_set(const DiscrSkeleton& sk, const Real& level_in) {
  if (level_in < 0) throw std::invalid_argument("level must be >= 0");
  long q = sk.pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real level = at_working_precision(level_in);
  Real lam_q = lambda_pow_q(sk.lambda, q);
  // small headroom: callers may have computed the ceiling at lower precision
  if (level > (2 + 2 * lam_q) * (1 + Real("1e-12")))
    throw std::invalid_argument("level exceeds discriminant extrema floor");
  BandSet out;
  if (level == 0) {
    out.pq = sk.pq;
    out.lambda = sk.lambda;
    for (const Real& z : sk.zeros) out.bands.push_back({z, z});
    return out;
  }
  out = range_set(sk, -level, level);
  out.level = level;
  return out;
}

BandSet level_set(const RationalFreq& pq, const Real& lambda, const Real& level) {
  return level_set(discr_skeleton(pq, lambda), level);
}

JDeltaResult j_delta_set(const RationalFreq& pq, const Real& lambda, const Real& delta) {
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("j_delta_set needs δ in (0,1)");
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  DiscrSkeleton sk = discr_skeleton(pq, lambda);
  Real lam_q = lambda_pow_q(lambda, q);
  Real level = 2 - 2 * lam_q + delta;

  JDeltaResult r;
  // complement computed without the level_set extrema-floor guard: the level
  // may exceed 2+2λ^q, in which case J_δ shrinks into the far gaps
  r.complement = range_set(sk, -level, level);
  r.complement.level = level;
  r.complement_measure = r.complement.measure();

  BandSet S = range_set(sk, -(2 + 2 * lam_q), 2 + 2 * lam_q);
  Real clip_lo = S.hull_lo() - 1, clip_hi = S.hull_hi() + 1;
  Real cursor = clip_lo;
  for (const auto& b : r.complement.bands) {
    if (b.lo > cursor) r.intervals.push_back({cursor, b.lo});
    cursor = std::max(cursor, b.hi);
  }
  if (cursor < clip_hi) r.intervals.push_back({cursor, clip_hi});
  // drop zero-length artifacts from touching bands
  std::erase_if(r.intervals, [](const Band& b) { return !(b.hi > b.lo); });
  return r;
}

namespace {

// Signed half-band edge: on the side of z_j where sign(Δ) = ξ, the point with
// |Δ| = 2 + 2τλ^q (τ may be negative). Returns the half-band [z_j, edge] length.
struct HalfBands {
  DiscrCtx ctx;
  DiscrSkeleton sk;
  Real lam_q;
  long q;
  HalfBands(const RationalFreq& pq, const Real& lambda)
      : ctx(pq, lambda), sk(discr_skeleton(pq, lambda)),
        lam_q(lambda_pow_q(lambda, pq.q_long())), q(pq.q_long()) {}

  // side: +1 = right of the zero, −1 = left
  int sign_on_side(long j, int side) const {
    // right of z_j (1-based j), Δ has sign (−1)^{q−j}
    int s = ((q - j) % 2 == 0) ? 1 : -1;
    return side > 0 ? s : -s;
  }
  Real edge(long j, int side, double tau) const {
    const Real& z = sk.zeros[j - 1];
    Real lim = side > 0 ? (j == q ? sk.bracket_hi : sk.extrema[j - 1])
                        : (j == 1 ? sk.bracket_lo : sk.extrema[j - 2]);
    Real target = Real(sign_on_side(j, side)) * (2 + 2 * Real(tau) * lam_q);
    Real lo = std::min(z, lim), hi = std::max(z, lim);
    return solve_monotone(ctx, lo, hi, target);
  }
  Real half_len(long j, int xi, double tau) const {
    int side = (sign_on_side(j, +1) == xi) ? +1 : -1;
    Real e = edge(j, side, tau);
    return fabs(e - sk.zeros[j - 1]);
  }
  // side (±1) on which Δ carries sign ξ
  int side_for_xi(long j, int xi) const { return (sign_on_side(j, +1) == xi) ? +1 : -1; }
};

}  // namespace

FTauResult f_tau(const RationalFreq& pq, const Real& lambda, double tau) {
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("f_tau needs λ in (0,1)");
  if (!(tau > 0 && tau <= 0.5))
    throw std::invalid_argument("f_tau needs τ in (0, 1/2]");
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  HalfBands hb(pq, lambda);

  // pick (j₀, ξ) maximizing the S₋ half-band |I^j_{−1,ξ}|; ties → lowest j, then ξ=+1
  long best_j = 1;
  int best_xi = +1;
  Real best_len(-1);
  for (long j = 1; j <= q; ++j) {
    for (int xi : {+1, -1}) {
      Real len = hb.half_len(j, xi, -1.0);
      Real tie = fabs(len - best_len);
      bool better = len > best_len && tie > Real(1e-25) * (1 + len);
      if (better) { best_len = len; best_j = j; best_xi = xi; }
    }
  }
  int side = hb.side_for_xi(best_j, best_xi);
  Real e_out = hb.edge(best_j, side, tau);     // |Δ| = 2 + 2τλ^q (moving outward)
  Real e_in = hb.edge(best_j, side, -tau);     // |Δ| = 2 − 2τλ^q
  FTauResult r;
  r.j0 = static_cast<int>(best_j);
  r.xi = best_xi;
  r.tau = tau;
  r.a = std::min(e_in, e_out);
  r.b = std::max(e_in, e_out);
  r.certified_length_lb = (1 - lambda) * Real(tau) * hb.lam_q / (2 * pow(Real(q), 3));
  return r;
}

BandRatioReport band_ratio_check(const RationalFreq& pq, const Real& lambda,
                                 double tau, double tau_prime) {
  if (!(tau >= -1 && tau <= tau_prime && tau_prime <= 1))
    throw std::invalid_argument("band_ratio_check needs −1 <= τ <= τ' <= 1");
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  HalfBands hb(pq, lambda);
  Real qr(q);
  Real dtau(tau_prime - tau);
  Real ratio_bound = 1 + hb.lam_q * dtau / (4 * qr * qr);

  BandRatioReport rep;
  rep.min_ratio_slack = Real(1e300);
  long best_j = 1;
  int best_xi = +1;
  Real best_len(-1);
  for (long j = 1; j <= q; ++j) {
    for (int xi : {+1, -1}) {
      Real l_lo = hb.half_len(j, xi, tau);
      Real l_hi = hb.half_len(j, xi, tau_prime);
      Real slack = (l_lo > 0) ? (l_hi / l_lo - ratio_bound) : Real(1e300);
      if (slack < rep.min_ratio_slack) {
        rep.min_ratio_slack = slack;
        rep.argmin_j = static_cast<int>(j);
        rep.argmin_xi = xi;
      }
      Real sel = hb.half_len(j, xi, -1.0);
      if (sel > best_len) { best_len = sel; best_j = j; best_xi = xi; }
    }
  }
  Real l_lo = hb.half_len(best_j, best_xi, tau);
  Real l_hi = hb.half_len(best_j, best_xi, tau_prime);
  Real diff_bound = (1 - lambda) * hb.lam_q * dtau / (4 * qr * qr * qr);
  rep.diff_slack = (l_hi - l_lo) - diff_bound;
  return rep;
}

std::pair<std::vector<double>, std::vector<double>>
band_edges_eigen(const RationalFreq& pq, double lambda) {
  long q = pq.q_long();
  auto eig = [&](double theta_off, double corner) {
    std::vector<double> w(q);
    if (q == 1) {
      double v = 2 * lambda * std::cos(2 * M_PI * to_d(pq.value()) + theta_off);
      w[0] = v + 2 * corner;
      return w;
    }
    int n = static_cast<int>(q);
    std::vector<double> A(n * n, 0.0);
    double alpha = to_d(pq.value());
    for (int j = 0; j < n; ++j)
      A[j * n + j] = 2 * lambda * std::cos(2 * M_PI * alpha * (j + 1) + theta_off);
    for (int j = 0; j + 1 < n; ++j) { A[j * n + j + 1] += 1; A[(j + 1) * n + j] += 1; }
    A[0 * n + (n - 1)] += corner;
    A[(n - 1) * n + 0] += corner;
    int info = 0, lwork = std::max(64, 4 * n) * n;
    std::vector<double> work(lwork);
    dsyev_("N", "U", &n, A.data(), &n, w.data(), &work[0], &lwork, &info);
    if (info != 0) throw std::runtime_error("dsyev failed");
    return w;
  };
  double off = M_PI / static_cast<double>(q);
  std::vector<double> S = eig(0.0, +1.0);
  {
    auto more = eig(off, -1.0);
    S.insert(S.end(), more.begin(), more.end());
  }
  std::vector<double> Sm = eig(off, +1.0);
  {
    auto more = eig(0.0, -1.0);
    Sm.insert(Sm.end(), more.begin(), more.end());
  }
  std::sort(S.begin(), S.end());
  std::sort(Sm.begin(), Sm.end());
  return {S, Sm};
}

Real dist_to_set(const Real& E, const BandSet& A) {
  Real best(1e300);
  for (const auto& b : A.bands) {
    Real d = (E < b.lo) ? b.lo - E : (E > b.hi ? E - b.hi : Real(0));
    if (d < best) best = d;
    if (best == 0) break;
  }
  return best;
}

Real hausdorff_distance(const BandSet& A, const BandSet& B) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("hausdorff_distance: empty set");
  auto one_sided = [](const BandSet& X, const BandSet& Y) {
    // sup over X of dist(·, Y): candidates are X's endpoints plus midpoints
    // of Y's gaps (interior peaks), clipped into X
    Real worst(0);
    std::vector<Real> cand;
    for (const auto& b : X.bands) { cand.push_back(b.lo); cand.push_back(b.hi); }
    for (size_t i = 0; i + 1 < Y.bands.size(); ++i)
      cand.push_back((Y.bands[i].hi + Y.bands[i + 1].lo) / 2);
    for (const Real& c : cand) {
      if (dist_to_set(c, X) > 0) continue;  // candidate must lie in X
      Real d = dist_to_set(c, Y);
      if (d > worst) worst = d;
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

Real set_measure(const BandSet& A) { return A.measure(); }

namespace {
BandSet from_sorted(std::vector<Band> v, const BandSet& meta) {
  BandSet out;
  out.pq = meta.pq;
  out.lambda = meta.lambda;
  out.bands = std::move(v);
  return out;
}
}  // namespace

BandSet set_intersect(const BandSet& A, const BandSet& B) {
  std::vector<Band> out;
  size_t i = 0, j = 0;
  while (i < A.bands.size() && j < B.bands.size()) {
    const Band& a = A.bands[i];
    const Band& b = B.bands[j];
    Real lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (hi >= lo && hi > lo) out.push_back({lo, hi});
    (a.hi < b.hi ? i : j)++;
  }
  return from_sorted(std::move(out), A);
}

BandSet set_union(const BandSet& A, const BandSet& B) {
  std::vector<Band> all = A.bands;
  all.insert(all.end(), B.bands.begin(), B.bands.end());
  std::sort(all.begin(), all.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
  std::vector<Band> out;
  for (const auto& b : all) {
    if (!out.empty() && b.lo <= out.back().hi) {
      if (b.hi > out.back().hi) out.back().hi = b.hi;
    } else {
      out.push_back(b);
    }
  }
  return from_sorted(std::move(out), A);
}

BandSet set_diff(const BandSet& A, const BandSet& B) {
  std::vector<Band> out;
  for (const auto& a : A.bands) {
    Real cur = a.lo;
    for (const auto& b : B.bands) {
      if (b.hi <= cur) continue;
      if (b.lo >= a.hi) break;
      if (b.lo > cur) out.push_back({cur, b.lo});
      cur = std::max(cur, b.hi);
      if (cur >= a.hi) break;
    }
    if (cur < a.hi) out.push_back({cur, a.hi});
  }
  std::erase_if(out, [](const Band& b) { return !(b.hi > b.lo); });
  return from_sorted(std::move(out), A);
}

std::vector<Band> gaps(const BandSet& A) {
  if (A.empty()) throw std::invalid_argument("gaps: empty set");
  std::vector<Band> out;
  for (size_t i = 0; i + 1 < A.bands.size(); ++i) {
    Real lo = A.bands[i].hi, hi = A.bands[i + 1].lo;
    if (hi > lo) out.push_back({lo, hi});
  }
  return out;
}

}  // namespace amo
