#include "doctest.h"

#include "amo/dos.hpp"

#include <cmath>
#include <random>

using namespace amo;

TEST_CASE("free IDS: N(0) = 1/2, edges at ±2") {
  PrecisionGuard g(128);
  RationalFreq free(0, 1);
  Real th = pi_real() / 2;  // theta = pi/2 kills the q=1 cosine
  Real lam("0.5");
  CHECK(std::fabs(to_d(ids_periodic(Real(0), free, lam, th)) - 0.5) < 1e-12);
  CHECK(to_d(ids_periodic(Real(-2), free, lam, th)) == doctest::Approx(0.0));
  CHECK(to_d(ids_periodic(Real(2), free, lam, th)) == doctest::Approx(1.0));
}

TEST_CASE("q=2 critical coupling: touching bands, N(0) = 1/2") {
  CHECK(std::fabs(to_d(ids_periodic(Real(0), RationalFreq(1, 2), Real(1), Real(0))) -
                  0.5) < 1e-12);
}

TEST_CASE("finite-box Sturm count matches periodic IDS within 2/L") {
  RationalFreq pq(2, 5);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  long L = 250;
  for (int t = 0; t < 20; ++t) {
    double E = -4 + 8 * U(rng), th = 2 * M_PI * U(rng);
    double a = ids_finite_box(E, pq, 0.5, th, L);
    double b = to_d(ids_periodic(Real(E), pq, Real("0.5"), Real(th)));
    CHECK(std::fabs(a - b) <= 2.0 / L + 1e-9);
  }
}

TEST_CASE("each band of S carries averaged mass exactly 1/q") {
  Real lam("0.5");
  RationalFreq pq(2, 5);
  auto sk = discr_skeleton(pq, lam);
  auto S = level_set(sk, 2 + 2 * boost::multiprecision::pow(lam, 5));
  for (auto& b : S.bands)
    CHECK(std::fabs(to_d(dos_of_interval(b.lo, b.hi, pq, lam)) - 0.2) < 1e-12);
}

TEST_CASE("Thouless residual: free closed form and q=5 mixed grid") {
  RationalFreq free(0, 1);
  auto rep = thouless_residual(free, 0.0, {{3.0, 0.0}});
  CHECK(rep.residual < 1e-10);
  auto rep0 = thouless_residual(free, 0.0, {{0.0, 0.0}});
  CHECK(rep0.residual < 1e-8);
  auto rep5 = thouless_residual(RationalFreq(2, 5), 0.5,
                                {{0.3, 0.0}, {1.1, 0.2}, {-2.5, 0.0}, {0.0, 1.0}});
  CHECK(rep5.residual < 1e-10);
  CHECK(rep5.flagged == 0);
}

TEST_CASE("duality: kappa = 1/lambda wins decisively") {
  auto rep = duality_check(RationalFreq(1, 2), Real("0.4"));
  CHECK(rep.winner_is_inverse);
  CHECK(to_d(rep.residual_inverse) < 1e-9);
  CHECK(to_d(rep.residual_double) > 0.1);  // the literal 2/lambda form is off
  CHECK(to_d(rep.ids_residual) < 1e-3);
}

TEST_CASE("ky fan inequality on a golden convergent pair") {
  auto rep = kyfan_check(RationalFreq(3, 5), RationalFreq(5, 8), Real("0.5"),
                         Real(-1), Real(1), 40);
  CHECK(rep.holds);
  CHECK(to_d(rep.lhs) >= to_d(rep.rhs));
}
