#include "doctest.h"

#include "amo/bigq.hpp"
#include "amo/cocycle.hpp"
#include "amo/experiments.hpp"

#include <cmath>

using namespace amo;

TEST_CASE("scaled double Lyapunov engine matches the mpfr period map") {
  PrecisionGuard g(256);
  RationalFreq pq(5, 13);
  double ref = to_d(lyapunov_periodic(CReal{Real(0.5), Real(0.01)}, pq,
                                      Real(0.7), Real(0.3)));
  CHECK(std::fabs(lyapunov_fine({0.5, 0.01}, pq, 0.7, 0.3) - ref) < 1e-13);
  RationalFreq big(89, 233);
  Real th = pi_real() / (2 * 233);
  PrecisionGuard g2(precision_bits_for_q(233));
  double ref2 = to_d(lyapunov_periodic(CReal{Real(3), Real(0)}, big, Real(0.5), th));
  CHECK(std::fabs(lyapunov_fine({3.0, 0.0}, big, 0.5, to_d(th)) - ref2) < 1e-13);
}

TEST_CASE("fine intersection measure equals the mpfr band-width sum") {
  RationalFreq coarse(1, 3), fine(10, 31);
  auto fm = fine_intersection_measure(coarse, fine, 0.5, 0.125);
  CHECK(fm.sturm_defect == 0);
  CHECK(fm.zero_count == 6);
  // mpfr oracle: sum of 4/|Delta'| over the fine zeros inside J_delta
  PrecisionGuard g(512);
  Real lam("0.5");
  auto sk = discr_skeleton(fine, lam);
  auto jd = j_delta_set(coarse, lam, Real("0.125"));
  Real s(0);
  for (const Real& z : sk.zeros) {
    bool in = false;
    for (auto& b : jd.intervals)
      if (z >= b.lo && z <= b.hi) in = true;
    if (!in) continue;
    Real val, der;
    discriminant_deriv(z, fine, lam, val, der);
    s += 4 / boost::multiprecision::abs(der);
  }
  CHECK(std::fabs(to_d(s) - fm.measure) / to_d(s) < 1e-8);
}

TEST_CASE("ls_instance guards and full check on a Liouville pair") {
  FrequencyCF cf{{Int(3), Int(100000)}};
  // r = 1 fails the exp(-e^{rq/2}) < delta margin at q = 3
  CHECK_THROWS_AS(ls_instance(cf, 1, 0.5, 1.0), std::invalid_argument);
  auto inst = ls_instance(cf, 1, 0.5, 2.0);
  CHECK(inst.pq.q_long() == 3);
  CHECK(inst.pq_fine.q_long() == 300001);
  CHECK(inst.delta == doctest::Approx(0.01125));
  CHECK(inst.E_grid.size() >= 90);
  auto rep = ls_lower_bound_check(inst);
  CHECK(rep.holds);
  CHECK(rep.min_gamma > rep.bound);
  CHECK(rep.eps_monotone);
}

TEST_CASE("meagerness: strictly decreasing with negative slope") {
  FrequencyCF prefix{{Int(3)}};
  auto rep = meagerness_check(prefix, 0.5, 0.125, {1000, 2000});
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.strictly_decreasing);
  CHECK(rep.slope < 0);
  CHECK(rep.points[0].ln_measure == doctest::Approx(-97.47).epsilon(1e-3));
  CHECK(rep.points[0].sturm_defect == 0);
  // guard: next quotient too small for the growth precondition
  CHECK_THROWS_AS(meagerness_check(prefix, 0.5, 0.125, {30}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("F_tau mass bounds at q = 1 and the proximity guard") {
  RationalFreq pq(0, 1);
  auto rep = ftau_mass_check(pq, 0.5, 0.5, pq);  // distance 0 partner
  CHECK(rep.bound_base == doctest::Approx(0.11785).epsilon(1e-3));
  CHECK(rep.base_holds);
  CHECK(rep.partner_holds);  // weaker /(4pi) constant nests inside /pi
  CHECK_THROWS_AS(ftau_mass_check(RationalFreq(1, 3), 0.9, 0.5,
                                  RationalFreq(500, 1501)),
                  std::invalid_argument);
}

TEST_CASE("PW failure mechanism at lambda = 0.2, q = 21") {
  auto rep = pw_failure_experiment(RationalFreq(8, 21), 0.2, 0.1);
  CHECK(rep.count == 12978506);  // floor(|F_half| / pitch), frozen
  CHECK(rep.count_holds);
  CHECK(rep.sum_holds);
  CHECK(rep.min_gamma > 0);
  CHECK(rep.pw_independent > rep.sum_gamma);  // full gap sum dominates
  // guard: pitch exceeds |F_half| at small q
  CHECK_THROWS_AS(pw_failure_experiment(RationalFreq(1, 3), 0.6, 0.2),
                  std::invalid_argument);
}
