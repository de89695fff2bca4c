#include "amo/experiments.hpp"

#include "amo/bigq.hpp"
#include "amo/cocycle.hpp"
#include "amo/dos.hpp"
#include "amo/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amo {

using boost::multiprecision::abs;
using boost::multiprecision::acos;
using boost::multiprecision::exp;
using boost::multiprecision::floor;
using boost::multiprecision::log;
using boost::multiprecision::pow;

namespace {

// ln of the ε floor exp(−e^{rq}/(15000 q² λ^{q/2})).
double ln_eps_floor(long q, double lambda, double r) {
  double qd = static_cast<double>(q);
  return -std::exp(r * qd) /
         (15000 * qd * qd * std::exp(0.5 * qd * std::log(lambda)));
}

double ls_bound(long q, double lambda, double delta) {
  double qd = static_cast<double>(q);
  return delta / (9600 * qd * qd * std::exp(0.5 * qd * std::log(lambda)));
}

// γ_{p̃/q̃,λ,θ}(E + iε): mpfr period map for small q̃, scaled double engine
// past the point where 8q̃ mantissa bits stop being affordable.
double gamma_fine(double E, double eps, const RationalFreq& fine, double lambda,
                  double theta) {
  long qf = fine.q_long();
  if (qf > 600) return lyapunov_fine({E, eps}, fine, lambda, theta);
  PrecisionGuard guard(precision_bits_for_q(qf));
  CReal z{Real(E), Real(eps)};
  return to_d(lyapunov_periodic(z, fine, Real(lambda), Real(theta)));
}

double min_gamma_on_grid(const LSInstance& inst, double eps) {
  double mn = std::numeric_limits<double>::infinity();
  for (double E : inst.E_grid)
    mn = std::min(mn, gamma_fine(E, eps, inst.pq_fine, inst.lambda, inst.theta));
  return mn;
}

}  // namespace

LSInstance ls_instance(const FrequencyCF& cf, int n, double lambda, double r,
                       double c0, int grid_pts, double theta) {
  if (static_cast<size_t>(n + 1) >= cf.prefix_len() + 1)
    throw std::invalid_argument("ls_instance: chain too short for level n+1");
  auto convs = cf_convergents(cf, n + 1);
  LSInstance inst;
  inst.pq = convs[static_cast<size_t>(n)];
  inst.pq_fine = convs[static_cast<size_t>(n + 1)];
  inst.lambda = lambda;
  inst.r = r;
  inst.theta = theta;
  long q = inst.pq.q_long();
  double qd = static_cast<double>(q);
  inst.delta = c0 * qd * qd * std::exp(qd * std::log(lambda));

  PrecisionGuard guard(precision_bits_for_q(q));
  Real lam(lambda), del(inst.delta);
  // convergent-gap enclosures must sit below δe^{−rq}
  Real cap = del * exp(Real(-r) * q);
  if (rational_gap(cf, n).second >= cap)
    throw std::invalid_argument("ls_instance: |p/q - alpha| enclosure exceeds delta*exp(-r q)");
  if (cf.prefix_len() >= static_cast<size_t>(n + 2)) {
    if (rational_gap(cf, n + 1).second >= cap)
      throw std::invalid_argument("ls_instance: fine-approximant gap exceeds delta*exp(-r q)");
  } else if (Real(1) / (Real(inst.pq.q) * Real(inst.pq_fine.q)) >= cap) {
    throw std::invalid_argument("ls_instance: |p/q - p~/q~| exceeds delta*exp(-r q)");
  }
  if (-std::exp(r * qd / 2) >= std::log(inst.delta))
    throw std::invalid_argument("ls_instance: exp(-e^{rq/2}) >= delta");
  double lnf = ln_eps_floor(q, lambda, r);
  inst.eps = lnf > -745 ? std::exp(lnf) : 0.0;  // floor below double: use 0

  auto jd = j_delta_set(inst.pq, lam, del);
  Real total(0);
  for (const Band& b : jd.intervals) total += b.length();
  if (jd.intervals.empty() || total <= 0)
    throw std::invalid_argument("ls_instance: J_delta empty");
  for (const Band& b : jd.intervals) {
    long k = std::max<long>(
        1, static_cast<long>(to_d(Real(grid_pts) * b.length() / total) + 0.5));
    for (long i = 0; i < k; ++i)
      inst.E_grid.push_back(
          to_d(b.lo + b.length() * (2 * i + 1) / (2 * k)));
  }
  return inst;
}

LSReport ls_lower_bound_check(const LSInstance& inst) {
  if (inst.E_grid.empty())
    throw std::invalid_argument("ls_lower_bound_check: empty energy grid");
  LSReport rep;
  rep.inst = inst;
  rep.min_gamma = min_gamma_on_grid(inst, inst.eps);
  rep.bound = ls_bound(inst.pq.q_long(), inst.lambda, inst.delta);
  rep.holds = rep.min_gamma >= rep.bound;
  if (inst.eps > 0) {
    double up = min_gamma_on_grid(inst, 2 * inst.eps);
    rep.eps_monotone = up >= rep.min_gamma - 1e-12;
  }
  return rep;
}

LSReport ls_escalate(const FrequencyCF& cf, int n0, double lambda, double r,
                     long q_max, double c0, int grid_pts) {
  LSReport last;
  for (int n = n0; static_cast<size_t>(n + 1) <= cf.prefix_len(); ++n) {
    LSInstance inst = ls_instance(cf, n, lambda, r, c0, grid_pts);
    if (inst.pq.q_long() > q_max) break;
    last = ls_lower_bound_check(inst);
    if (last.holds) {
      last.q_star = inst.pq.q_long();
      return last;
    }
  }
  return last;
}

MeagernessReport meagerness_check(const FrequencyCF& prefix, double lambda,
                                  double delta, const std::vector<long>& a_next,
                                  double r, double C, double C1) {
  if (prefix.a.empty())
    throw std::invalid_argument("meagerness_check: empty chain prefix");
  int n = static_cast<int>(prefix.prefix_len());
  RationalFreq coarse = cf_convergents(prefix, n).back();
  long q = coarse.q_long();
  double qd = static_cast<double>(q);

  MeagernessReport rep;
  rep.coarse = coarse;
  rep.lambda = lambda; rep.delta = delta; rep.r = r; rep.C = C; rep.C1 = C1;

  for (long a : a_next) {
    FrequencyCF cf2 = prefix;
    cf2.a.push_back(a);
    RationalFreq fine = cf_convergents(cf2, n + 1).back();
    double qf = fine.q.convert_to<double>();
    if (!(qf * delta > std::exp(r * qd)))
      throw std::invalid_argument(
          "meagerness_check: growth precondition q_next*delta > exp(r*q) fails");
    auto fm = fine_intersection_measure(coarse, fine, lambda, delta);
    MeagernessPoint pt;
    pt.fine = fine;
    pt.x = qf * delta / qd;
    pt.ln_measure = fm.ln_measure;
    pt.ln_bound = std::log(C * qd * qd / delta) - pt.x / C1;
    pt.zero_count = fm.zero_count;
    pt.sturm_defect = fm.sturm_defect;
    rep.points.push_back(pt);
  }

  // least-squares slope of ln(measure) against x = q̃δ/q
  size_t m = rep.points.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : rep.points) {
    sx += p.x; sy += p.ln_measure;
    sxx += p.x * p.x; sxy += p.x * p.ln_measure;
  }
  double denom = m * sxx - sx * sx;
  rep.slope = denom != 0 ? (m * sxy - sx * sy) / denom : 0;
  rep.strictly_decreasing = true;
  rep.bounds_hold = true;
  for (size_t i = 0; i < m; ++i) {
    if (i && rep.points[i].ln_measure >= rep.points[i - 1].ln_measure)
      rep.strictly_decreasing = false;
    if (rep.points[i].ln_measure > rep.points[i].ln_bound)
      rep.bounds_hold = false;
  }
  return rep;
}

FTauMassReport ftau_mass_check(const RationalFreq& pq, double lambda,
                               double tau, const RationalFreq& partner) {
  long q = pq.q_long();
  PrecisionGuard guard(precision_bits_for_q(std::max(q, partner.q_long())));
  Real lam(lambda), t(tau);
  Real lamq2 = exp(Real(q) * log(lam) / 2);

  // proximity precondition for the fine-approximant mass bound
  Real pi = pi_real();
  Real rho_cap = t * t * acos(t / 2) / (256 * pi * pi * pow(Real(q), 4)) *
                 exp(Real(3 * q) * log(lam) / 2);
  if (abs(partner.value() - pq.value()) > rho_cap)
    throw std::invalid_argument(
        "ftau_mass_check: partner approximant violates the proximity precondition");

  FTauMassReport rep;
  rep.pq = pq; rep.partner = partner; rep.lambda = lambda; rep.tau = tau;
  FTauResult F = f_tau(pq, lam, tau);
  Real ctau = t * acos(t) / pi;
  rep.rho_base = to_d(dos_of_interval(F.a, F.b, pq, lam));
  rep.bound_base = to_d(ctau * lamq2 / q);
  rep.rho_partner = to_d(dos_of_interval(F.a, F.b, partner, lam));
  rep.bound_partner = to_d(ctau / 4 * lamq2 / q);
  rep.base_holds = rep.rho_base >= rep.bound_base;
  rep.partner_holds = rep.rho_partner >= rep.bound_partner;
  return rep;
}

PWFailureReport pw_failure_experiment(const RationalFreq& pq, double lambda,
                                      double r, double C1, long sample_cap) {
  long q = pq.q_long();
  double qd = static_cast<double>(q);
  PrecisionGuard guard(precision_bits_for_q(q));
  Real lam(lambda);
  Real pitch = 225 * exp(Real((3 + r) * qd / 2) * log(lam));
  FTauResult F = f_tau(pq, lam, 0.5);
  Real len = F.b - F.a;
  if (pitch > len)
    throw std::invalid_argument(
        "pw_failure_experiment: interval pitch exceeds |F_half| (q too small "
        "for this lambda/r)");

  PWFailureReport rep;
  rep.pq = pq; rep.lambda = lambda; rep.r = r; rep.C1 = C1;
  rep.ln_pitch = to_d(log(pitch));
  rep.ln_flen = to_d(log(len));
  Real cnt = floor(len / pitch);
  if (cnt > Real(9e17)) throw std::overflow_error("pw_failure_experiment: count");
  rep.count = static_cast<long>(to_d(cnt));
  rep.count_bound =
      (1 - lambda) / (1000 * qd * qd * qd) * std::exp(-(1 + r) * qd / 2 * std::log(lambda));
  rep.count_holds = rep.count >= rep.count_bound;

  // γ̄ at the middle-ninth midpoint of each packed interval, i.e. its center;
  // past sample_cap the sum is extrapolated from evenly spread samples.
  rep.sampled = std::min<long>(rep.count, sample_cap);
  double sum = 0;
  rep.min_gamma = std::numeric_limits<double>::infinity();
  for (long k = 0; k < rep.sampled; ++k) {
    long idx = rep.sampled == rep.count
                   ? k
                   : static_cast<long>(static_cast<double>(k) * rep.count /
                                       rep.sampled);
    double E = to_d(F.a + (Real(idx) + Real(0.5)) * pitch);
    double g = gamma_bar(E, pq, lambda);
    sum += g;
    rep.min_gamma = std::min(rep.min_gamma, g);
  }
  rep.sum_gamma = rep.sampled > 0
                      ? sum / static_cast<double>(rep.sampled) *
                            static_cast<double>(rep.count)
                      : 0;
  rep.per_interval_bound =
      std::exp(qd / 2 * std::log(lambda)) / (4 * C1 * qd * qd);
  rep.sum_bound = (1 - lambda) / (4000 * C1 * std::pow(qd, 5)) *
                  std::exp(-r * qd / 2 * std::log(lambda));
  rep.sum_holds = rep.sum_gamma >= rep.sum_bound;
  rep.pw_independent = pw_sum(pq, lambda).sum;
  return rep;
}

}  // namespace amo
