#include "amo/dos.hpp"
#include "amo/cocycle.hpp"
#include "inertia.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::cos;
using boost::multiprecision::acos;
using boost::multiprecision::fabs;

namespace {

Real lam_pow(const Real& lambda_in, long q) {
  Real lambda = at_working_precision(lambda_in);
  if (lambda == 0) return Real(0);
  if (lambda == 1) return Real(1);
  return exp(Real(q) * log(lambda));
}

std::vector<Real> potential_at(const RationalFreq& pq, const Real& lambda_in,
                               const Real& theta_in) {
  Real lambda = at_working_precision(lambda_in);
  Real theta = at_working_precision(theta_in);
  long q = pq.q_long();
  Real two_pi = 2 * pi_real();
  Real alpha = pq.value();
  std::vector<Real> v(q);
  for (long j = 0; j < q; ++j) v[j] = 2 * lambda * cos(two_pi * alpha * (j + 1) + theta);
  return v;
}

// Core of ids_periodic with Δ(E) precomputed (it is θ-independent, so the
// θ-average reuses one evaluation).
Real ids_from_counts(const Real& E_in, const RationalFreq& pq, const Real& lambda,
                     const Real& theta_in, const Real& delta, const Real& lam_q) {
  long q = pq.q_long();
  Real E = at_working_precision(E_in);
  Real theta = at_working_precision(theta_in);
  std::vector<Real> v = potential_at(pq, lambda, theta);
  long n0 = detail::inertia_count_below(v, E, CReal(Real(1)));
  long npi = detail::inertia_count_below(v, E, CReal(Real(-1)));
  if (n0 == npi) return Real(n0) / q;  // gap plateau
  long j = (n0 + npi + 1) / 2;         // 1-based band index
  Real D = delta - 2 * lam_q * cos(Real(q) * theta);
  Real x = D / 2;
  if (x > 1) x = 1;
  if (x < -1) x = -1;
  Real k = acos(x);
  if (n0 < npi) k = pi_real() - k;  // band entered through the φ = π edge
  return (Real(j - 1) + k / pi_real()) / q;
}

}  // namespace

Real ids_periodic(const Real& E, const RationalFreq& pq, const Real& lambda,
                  const Real& theta) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real delta = discriminant_eval(E, pq, lambda);
  return ids_from_counts(E, pq, lambda, theta, delta, lam_pow(lambda, q));
}

Real ids_averaged(const Real& E, const RationalFreq& pq, const Real& lambda) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real delta = discriminant_eval(E, pq, lambda);
  Real lam_q = lam_pow(lambda, q);
  int M = std::max(64L, 8 * q);
  Real period = 2 * pi_real() / q;
  Real sum(0);
  for (int i = 0; i < M; ++i)
    sum += ids_from_counts(E, pq, lambda, period * i / M, delta, lam_q);
  return sum / M;
}

Real dos_of_interval(const Real& E1, const Real& E2, const RationalFreq& pq,
                     const Real& lambda) {
  return ids_averaged(E2, pq, lambda) - ids_averaged(E1, pq, lambda);
}

DOSTable dos_table(const std::vector<Real>& energies, const RationalFreq& pq,
                   const Real& lambda, bool theta_averaged, const Real& theta) {
  DOSTable t;
  t.energies = energies;
  std::sort(t.energies.begin(), t.energies.end());
  t.pq = pq;
  t.lambda = lambda;
  t.theta_averaged = theta_averaged;
  t.theta = theta;
  t.nodes = theta_averaged ? std::max(64L, 8 * pq.q_long()) : 1;
  for (const Real& E : t.energies)
    t.values.push_back(theta_averaged ? ids_averaged(E, pq, lambda)
                                      : ids_periodic(E, pq, lambda, theta));
  return t;
}

double ids_finite_box(double E, const Real& alpha, double lambda, double theta, long L) {
  if (L < 1) throw std::invalid_argument("ids_finite_box needs L >= 1");
  if (L > 2000000000L) throw std::length_error("box size exceeds the resource budget");
  double a = to_d(alpha);
  long cnt = 0;
  double d = 0;
  for (long n = 0; n < L; ++n) {
    double v = 2 * lambda * std::cos(2 * M_PI * a * n + theta);
    d = (n == 0) ? v - E : v - E - 1.0 / d;
    if (d == 0) d = -1e-300;
    if (d < 0) ++cnt;
  }
  return static_cast<double>(cnt) / static_cast<double>(L);
}

// ---------------------------------------------------------------------------
// Thouless formula

namespace {

// double-precision discriminant and derivative (quadrature inner loop)
struct DDiscr {
  long q;
  std::vector<double> v;
  DDiscr(const RationalFreq& pq, double lambda) : q(pq.q_long()), v(q) {
    double alpha = to_d(pq.value());
    double ts = M_PI / (2.0 * q);
    for (long j = 0; j < q; ++j) v[j] = 2 * lambda * std::cos(2 * M_PI * alpha * (j + 1) + ts);
  }
  void eval(double E, double& val, double& der) const {
    double a = 1, b = 0, c = 0, d = 1;
    double da = 0, db = 0, dc = 0, dd = 0;
    for (long j = 0; j < q; ++j) {
      double t = E - v[j];
      double na = t * a - c, nb = t * b - d;
      double nda = a + t * da - dc, ndb = b + t * db - dd;
      dc = da; dd = db; da = nda; db = ndb;
      c = a; d = b; a = na; b = nb;
    }
    val = a + d;
    der = da + dd;
  }
};

constexpr double kGL16x[8] = {0.0950125098376374, 0.2816035507792589,
                              0.4580167776572274, 0.6178762444026438,
                              0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
constexpr double kGL16w[8] = {0.1894506104550685, 0.1826034150449236,
                              0.1691565193950025, 0.1495959888165767,
                              0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16(const F& f, double a, double b) {
  double h = (b - a) / 2, m = (a + b) / 2, s = 0;
  for (int i = 0; i < 8; ++i)
    s += kGL16w[i] * (f(m - h * kGL16x[i]) + f(m + h * kGL16x[i]));
  return s * h;
}

template <class F>
double adapt_gl(const F& f, double a, double b, double tol, int depth) {
  double whole = gl16(f, a, b);
  double m = (a + b) / 2;
  double split = gl16(f, a, m) + gl16(f, m, b);
  if (std::abs(whole - split) < tol || depth > 24) return split;
  return adapt_gl(f, a, m, tol / 2, depth + 1) + adapt_gl(f, m, b, tol / 2, depth + 1);
}

}  // namespace

ThoulessReport thouless_residual(const RationalFreq& pq, double lambda,
                                 const std::vector<std::complex<double>>& E_grid) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lam(lambda);
  Real lam_q = lam_pow(lam, q);
  DiscrSkeleton sk = discr_skeleton(pq, lam);
  DDiscr dd(pq, lambda);
  int M = std::max(64L, 8 * q);

  // per-θ band structure (E-independent): {−2+s <= Δ <= 2+s}, s = 2λ^q cos qθ
  std::vector<double> s_of(M);
  std::vector<std::vector<std::pair<double, double>>> bands_of(M);
  Real period = 2 * pi_real() / q;
  for (int i = 0; i < M; ++i) {
    Real theta = period * i / M;
    Real s = 2 * lam_q * cos(Real(q) * theta);
    s_of[i] = to_d(s);
    BandSet bs = range_set(sk, -2 + s, 2 + s);
    for (const auto& b : bs.bands) bands_of[i].emplace_back(to_d(b.lo), to_d(b.hi));
  }

  ThoulessReport rep;
  for (const auto& Ec : E_grid) {
    // exclusion zone: real points within 1e-6 of some per-θ band edge
    bool flagged = false;
    if (std::abs(Ec.imag()) < 1e-12) {
      for (int i = 0; i < M && !flagged; ++i)
        for (const auto& b : bands_of[i])
          if (std::abs(Ec.real() - b.first) < 1e-6 || std::abs(Ec.real() - b.second) < 1e-6) {
            flagged = true;
            break;
          }
    }
    if (flagged) {
      ++rep.flagged;
      rep.per_point.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }

    CReal E{Real(Ec.real()), Real(Ec.imag())};
    double gamma_bar = 0, integral = 0;
    for (int i = 0; i < M; ++i) {
      gamma_bar += to_d(lyapunov_periodic(E, pq, lam, period * i / M));
      double s = s_of[i];
      auto log_dist = [&](double Ep) {
        double dx = Ec.real() - Ep, dy = Ec.imag();
        return 0.5 * std::log(dx * dx + dy * dy);
      };
      auto rho = [&](double Ep) {
        double val, der;
        dd.eval(Ep, val, der);
        double D = val - s;
        // 4 - D^2 is rounding noise within ~1e-15 of an edge (touching bands
        // put edges at that scale); floor at the noise level, not at denormal,
        // so rho stays bounded by |der|*1e7 on a region of matching width.
        double g = 4 - D * D;
        if (g < 1e-14) g = 1e-14;
        return std::abs(der) / (M_PI * q * std::sqrt(g));
      };
      for (const auto& [l, u] : bands_of[i]) {
        if (!(u > l)) continue;
        double mdl = (l + u) / 2;
        auto lower = [&](double t) { double Ep = l + t * t; return log_dist(Ep) * rho(Ep) * 2 * t; };
        auto upper = [&](double t) { double Ep = u - t * t; return log_dist(Ep) * rho(Ep) * 2 * t; };
        integral += adapt_gl(lower, 0.0, std::sqrt(mdl - l), 1e-10, 0);
        integral += adapt_gl(upper, 0.0, std::sqrt(u - mdl), 1e-10, 0);
      }
    }
    double res = std::abs(gamma_bar / M - integral / M);
    rep.per_point.push_back(res);
    rep.residual = std::max(rep.residual, res);
  }
  return rep;
}

// ---------------------------------------------------------------------------

KyFanReport kyfan_check(const RationalFreq& pq, const RationalFreq& pq_prime,
                        const Real& lambda_in, const Real& rm_in, const Real& rp_in,
                        long L, double tol) {
  if (L < 1) throw std::invalid_argument("kyfan_check needs L >= 1");
  if (!(rm_in < rp_in)) throw std::invalid_argument("kyfan_check needs r- < r+");
  KyFanReport rep;
  PrecisionGuard guard(precision_bits_for_q(std::max(pq.q_long(), pq_prime.q_long())));
  Real lambda = at_working_precision(lambda_in);
  Real r_minus = at_working_precision(rm_in);
  Real r_plus = at_working_precision(rp_in);
  Real pi = pi_real();
  Real kappa = 2 * pi * (4 * pi * lambda) * fabs(pq_prime.value() - pq.value()) * L;
  rep.kappa = to_d(kappa);
  rep.lhs = dos_of_interval(r_minus, r_plus, pq_prime, lambda);
  Real inner_lo = r_minus + kappa, inner_hi = r_plus - kappa;
  Real inner = (inner_lo < inner_hi) ? dos_of_interval(inner_lo, inner_hi, pq, lambda)
                                     : Real(0);
  rep.rhs = inner - Real(4) / L;
  rep.holds = rep.lhs >= rep.rhs - Real(tol);
  return rep;
}

DualityReport duality_check(const RationalFreq& pq, const Real& lambda_in) {
  if (!(lambda_in > 0)) throw std::invalid_argument("duality_check needs λ > 0");
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lambda = at_working_precision(lambda_in);
  auto spectrum_of = [&](const Real& lam) {
    return level_set(pq, lam, 2 + 2 * lam_pow(lam, q));
  };
  auto scale = [&](const BandSet& S, const Real& f) {
    BandSet out = S;
    for (auto& b : out.bands) { b.lo *= f; b.hi *= f; }
    return out;
  };
  BandSet S = spectrum_of(lambda);
  DualityReport rep;
  rep.residual_inverse = hausdorff_distance(S, scale(spectrum_of(1 / lambda), lambda));
  rep.residual_double = hausdorff_distance(S, scale(spectrum_of(2 / lambda), lambda));
  rep.winner_is_inverse = rep.residual_inverse <= rep.residual_double;
  Real kappa = rep.winner_is_inverse ? 1 / lambda : 2 / lambda;
  rep.best_kappa = to_d(kappa);

  // IDS identity for the winner: N̄_λ(E) = N̄_κ(E/λ) on an interior grid
  rep.ids_residual = 0;
  Real lo = S.hull_lo(), hi = S.hull_hi();
  for (int i = 1; i <= 9; ++i) {
    Real E = lo + (hi - lo) * i / 10;
    Real d = fabs(ids_averaged(E, pq, lambda) - ids_averaged(E / lambda, pq, kappa));
    if (d > rep.ids_residual) rep.ids_residual = d;
  }
  return rep;
}

}  // namespace amo
