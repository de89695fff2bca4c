#include "amo/cocycle.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <random>
#include <stdexcept>

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::sqrt;
using boost::multiprecision::cos;
using boost::multiprecision::fabs;

ScaledMat2 ScaledMat2::identity() {
  ScaledMat2 m;
  m.a = CReal(Real(1)); m.b = CReal(Real(0));
  m.c = CReal(Real(0)); m.d = CReal(Real(1));
  m.log_scale = 0;
  return m;
}

namespace {
Real entry_sup(const ScaledMat2& m) {
  Real s = fabs(m.a.re);
  for (const Real* v : {&m.a.im, &m.b.re, &m.b.im, &m.c.re, &m.c.im, &m.d.re, &m.d.im})
    if (fabs(*v) > s) s = fabs(*v);
  return s;
}
}  // namespace

void ScaledMat2::normalize() {
  Real s = entry_sup(*this);
  if (s == 0) return;
  // exact power-of-two rescale: largest entry into [1, 2)
  long e = mpfr_get_exp(s.backend().data());  // s ∈ [2^{e-1}, 2^e)
  long shift = e - 1;
  if (shift == 0) return;
  Real f = 1;
  mpfr_mul_2si(f.backend().data(), f.backend().data(), -shift, MPFR_RNDN);
  for (Real* v : {&a.re, &a.im, &b.re, &b.im, &c.re, &c.im, &d.re, &d.im}) *v *= f;
  log_scale += Real(shift) * log(Real(2));
}

void ScaledMat2::lmul(const CReal& t11, const CReal& t12,
                      const CReal& t21, const CReal& t22) {
  CReal na = t11 * a + t12 * c, nb = t11 * b + t12 * d;
  CReal nc = t21 * a + t22 * c, nd = t21 * b + t22 * d;
  a = na; b = nb; c = nc; d = nd;
  normalize();
}

Real ScaledMat2::log_norm() const {
  Real f = sqrt(a.norm2() + b.norm2() + c.norm2() + d.norm2());
  return log_scale + log(f);
}

CReal ScaledMat2::trace_true() const {
  Real s = exp(log_scale);
  CReal t = a + d;
  return {t.re * s, t.im * s};
}

ScaledMat2 transfer_product(const CReal& E_in, const Real& alpha_in, const Real& lambda_in,
                            const Real& theta_in, long n) {
  if (n < 1) throw std::invalid_argument("transfer_product needs n >= 1");
  CReal E{at_working_precision(E_in.re), at_working_precision(E_in.im)};
  Real alpha = at_working_precision(alpha_in);
  Real lambda = at_working_precision(lambda_in);
  Real theta = at_working_precision(theta_in);
  ScaledMat2 m = ScaledMat2::identity();
  Real two_pi = 2 * pi_real();
  CReal one(Real(1)), zero(Real(0)), neg_one(Real(-1));
  for (long j = 1; j <= n; ++j) {
    Real phase = two_pi * alpha * j + theta;
    CReal t11 = E - CReal(2 * lambda * cos(phase));
    m.lmul(t11, neg_one, one, zero);
  }
  return m;
}

Real lyapunov_periodic(const CReal& E, const RationalFreq& pq, const Real& lambda,
                       const Real& theta) {
  long q = pq.q_long();
  ScaledMat2 m = transfer_product(E, pq, lambda, theta, q);
  // Spr from (Tr, det = 1): μ± = s ± sqrt(s² − 1), s = Tr/2. Work with the
  // stored (rescaled) trace; the scale re-enters additively in the log.
  CReal t = m.a + m.d;               // true trace = t·e^{log_scale}
  Real abs_t = cx_abs(t);
  if (t.im == 0 && m.log_scale + log(abs_t == 0 ? Real(1) : abs_t) <= log(Real(2))) {
    // real trace with |Tr| possibly <= 2: evaluate exactly
    Real tr = t.re * exp(m.log_scale);
    if (fabs(tr) <= 2) return Real(0);
    Real s = fabs(tr) / 2;
    return log(s + sqrt(s * s - 1)) / q;
  }
  // general/large case: s = (t/2)·e^{log_scale}; for very large |s|,
  // μ ≈ 2s, handled stably in scaled form: μ = s(1 + sqrt(1 − 1/s²)).
  Real ln_abs_s = m.log_scale + log(abs_t / 2);
  if (ln_abs_s > 40) {
    // sqrt correction is 1 + O(1e-35); ln Spr = ln|2s| up to that
    Real g = (ln_abs_s + log(Real(2))) / q;
    return g < 0 ? Real(0) : g;
  }
  Real sc = exp(m.log_scale);
  CReal s{t.re * sc / 2, t.im * sc / 2};
  CReal r = cx_sqrt(s * s - CReal(Real(1)));
  Real m1 = cx_abs(s + r), m2 = cx_abs(s - r);
  Real spr = m1 > m2 ? m1 : m2;
  Real g = log(spr) / q;
  return g < 0 ? Real(0) : g;
}

// ---------------------------------------------------------------------------

double op_norm(const Mat2d& m) {
  // σmax² = (s + sqrt(s² − 4|det|²))/2 with s = Σ|entries|².
  double s = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
  double dt = std::abs(m.det());
  double disc = s * s - 4 * dt * dt;
  if (disc < 0) disc = 0;
  return std::sqrt((s + std::sqrt(disc)) / 2);
}

AvalancheReport avalanche_check(const AvalancheInstance& inst, double tol) {
  size_t n = inst.A.size();
  if (n == 0 || inst.delta.size() != n)
    throw std::invalid_argument("avalanche instance empty or inconsistent");
  AvalancheReport r{};
  r.cond1_margin = r.cond2_margin = r.cond3_margin = std::numeric_limits<double>::infinity();
  const double b = inst.b, c = inst.c;
  for (size_t j = 0; j + 1 < n; ++j) {
    double d0 = inst.delta[j], d1 = inst.delta[j + 1];
    r.cond1_margin = std::min(r.cond1_margin, d0 + b * std::pow(d0, 1.5) - d1);
    r.cond2_margin = std::min(r.cond2_margin, b * d0 - op_norm(inst.A[j + 1] - inst.A[j]));
  }
  for (size_t j = 0; j < n; ++j)
    r.cond3_margin = std::min(r.cond3_margin,
                              std::abs(inst.A[j].trace()) - 2 - (1 - b) * inst.delta[j]);

  double u_norm = std::sqrt(std::norm(inst.u0[0]) + std::norm(inst.u0[1]));
  Cd v0 = inst.A[0].a * inst.u0[0] + inst.A[0].b * inst.u0[1];
  Cd v1 = inst.A[0].c * inst.u0[0] + inst.A[0].d * inst.u0[1];
  double a1u = std::sqrt(std::norm(v0) + std::norm(v1));
  r.init_margin = std::log(a1u / u_norm) - (1 - c) * std::sqrt(inst.delta[0]);

  // scaled product A_n ⋯ A_1 u0
  Cd w0 = inst.u0[0], w1 = inst.u0[1];
  double log_scale = -std::log(u_norm);
  w0 /= u_norm; w1 /= u_norm;
  double sum_sqrt = 0;
  for (size_t j = 0; j < n; ++j) {
    Cd t0 = inst.A[j].a * w0 + inst.A[j].b * w1;
    Cd t1 = inst.A[j].c * w0 + inst.A[j].d * w1;
    double nn = std::sqrt(std::norm(t0) + std::norm(t1));
    w0 = t0 / nn; w1 = t1 / nn;
    log_scale += std::log(nn);
    sum_sqrt += std::sqrt(inst.delta[j]);
  }
  r.lhs = log_scale;
  r.rhs = (1 - c) * sum_sqrt;
  r.conclusion_holds = r.lhs >= r.rhs - tol;
  return r;
}

namespace {
Mat2d rot(double phi) {
  double cs = std::cos(phi), sn = std::sin(phi);
  return {cs, -sn, sn, cs};
}
Mat2d hyperbolic(double mu, double phi) {
  // R(φ) diag(e^μ, e^{-μ}) R(φ)^{-1}; trace 2cosh μ, det 1
  Mat2d d{std::exp(mu), 0, 0, std::exp(-mu)};
  return rot(phi) * d * rot(-phi);
}
}  // namespace

AvalancheInstance avalanche_generate(int n, double b, double c, std::uint64_t seed) {
  if (!(c > 0 && c < 1) || !(b > 0 && b <= 0.1))
    throw std::invalid_argument("avalanche_generate needs 0<c<1, 0<b<=1/10");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  AvalancheInstance inst;
  inst.b = b; inst.c = c;
  inst.delta.resize(n);
  inst.A.resize(n);

  // δ path: free to decrease, increase capped by condition (1) and by b
  // δ path: moves only by relative steps of size O(b√δ) so the induced
  // drift of μ_j ≈ √(cδ_j) stays well inside the ‖A_{j+1}−A_j‖ <= bδ_j ball
  inst.delta[0] = b * (0.2 + 0.79 * unif(rng));
  for (int j = 1; j < n; ++j) {
    double d0 = inst.delta[j - 1];
    double up = std::min(d0 + 0.999 * b * std::pow(d0, 1.5), 0.999 * b);
    double lo = d0 * (1 - 0.9 * b * std::sqrt(d0));
    inst.delta[j] = lo + (up - lo) * unif(rng);
  }

  // trace family: |Tr A_j| = 2 + cⱼ δ_j with a per-instance constant cⱼ ∈ [1−b, 1]
  const double ctr = 1 - b * unif(rng);
  auto mu_for = [&](int j) { return std::acosh(1 + ctr * inst.delta[j] / 2); };

  double phi = 2 * M_PI * unif(rng);
  inst.A[0] = hyperbolic(mu_for(0), phi);
  for (int j = 1; j < n; ++j) {
    double d_prev = inst.delta[j - 1];
    double step_phi = (unif(rng) - 0.5) * b * std::sqrt(d_prev);
    int tries = 0;
    for (;;) {
      Mat2d cand = hyperbolic(mu_for(j), phi + step_phi);
      if (op_norm(cand - inst.A[j - 1]) <= b * d_prev) {
        inst.A[j] = cand;
        phi += step_phi;
        break;
      }
      step_phi *= 0.5;
      if (++tries > 100) throw std::runtime_error("avalanche_generate: retraction failed");
    }
  }

  // u0: expanding eigenvector of A₁ (true unit-eigenvector of the conjugated
  // diagonal: R(φ₁)·e₁, but recompute from A₁ itself for robustness)
  {
    const Mat2d& A = inst.A[0];
    Cd tr = A.trace();
    Cd mu = tr / 2.0 + std::sqrt(tr * tr / 4.0 - 1.0);
    // eigenvector of [[a,b],[c,d]] for eigenvalue mu
    Cd v0, v1;
    if (std::abs(A.b) > 1e-14) { v0 = A.b; v1 = mu - A.a; }
    else if (std::abs(A.c) > 1e-14) { v0 = mu - A.d; v1 = A.c; }
    else { v0 = (std::abs(A.a - mu) < std::abs(A.d - mu)) ? 1 : 0; v1 = 1.0 - v0; }
    double nn = std::sqrt(std::norm(v0) + std::norm(v1));
    inst.u0[0] = v0 / nn; inst.u0[1] = v1 / nn;
  }

  // the instance must satisfy its own invariants
  AvalancheReport rep = avalanche_check(inst);
  if (rep.cond1_margin < 0 || rep.cond2_margin < 0 || rep.cond3_margin < 0 ||
      rep.init_margin < -1e-12)
    throw std::runtime_error("avalanche_generate: hypothesis check failed after construction");
  return inst;
}

}  // namespace amo
