#include "doctest.h"

#include "amo/spectrum.hpp"

#include <cmath>

using namespace amo;
using boost::multiprecision::abs;
using boost::multiprecision::pow;

TEST_CASE("discriminant closed forms at q = 1, 2") {
  PrecisionGuard g(128);
  Real lam("0.5");
  // q=1: Delta(E) = E
  CHECK(to_d(discriminant_eval(Real("1.25"), RationalFreq(0, 1), lam)) ==
        doctest::Approx(1.25).epsilon(1e-14));
  // q=2: Delta(E) = E^2 - 2 - 2*lambda^2
  CHECK(to_d(discriminant_eval(Real(2), RationalFreq(1, 2), lam)) ==
        doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("Chambers residual is tiny on a mixed grid") {
  PrecisionGuard g(precision_bits_for_q(3));
  std::vector<Real> Eg = {Real("-2.1"), Real("0.3"), Real("1.7")};
  std::vector<Real> tg = {Real("0.1"), Real("1.1"), Real("2.9")};
  CHECK(to_d(chambers_residual(RationalFreq(1, 3), Real("0.5"), Eg, tg)) < 1e-12);
}

TEST_CASE("skeleton q=5: zeros/extrema interlace, symmetric spectrum") {
  PrecisionGuard g(precision_bits_for_q(5));
  auto sk = discr_skeleton(RationalFreq(2, 5), Real("0.5"));
  REQUIRE(sk.zeros.size() == 5);
  REQUIRE(sk.extrema.size() == 4);
  CHECK(std::fabs(to_d(sk.zeros[0]) + 2.052205189514) < 1e-9);
  CHECK(std::fabs(to_d(sk.zeros[1]) + 1.427744325897) < 1e-9);
  CHECK(std::fabs(to_d(sk.zeros[2])) < 1e-12);
  for (int i = 0; i < 4; ++i) {
    CHECK(sk.zeros[static_cast<size_t>(i)] < sk.extrema[static_cast<size_t>(i)]);
    CHECK(sk.extrema[static_cast<size_t>(i)] < sk.zeros[static_cast<size_t>(i) + 1]);
  }
}

TEST_CASE("|S_minus| = 4 - 4 lambda") {
  for (double l : {0.3, 0.5, 0.9}) {
    PrecisionGuard g(precision_bits_for_q(5));
    Real lam(l);
    auto sk = discr_skeleton(RationalFreq(2, 5), lam);
    auto sm = level_set(sk, 2 - 2 * pow(lam, 5));
    CHECK(std::fabs(to_d(sm.measure()) - (4 - 4 * l)) < 1e-10);
  }
}

TEST_CASE("level-set edges match the Floquet eigenvalue oracle") {
  PrecisionGuard g(precision_bits_for_q(5));
  Real lam("0.5");
  auto sk = discr_skeleton(RationalFreq(2, 5), lam);
  Real lamq = pow(lam, 5);
  auto S = level_set(sk, 2 + 2 * lamq);
  auto Sm = level_set(sk, 2 - 2 * lamq);
  auto [Se, Sme] = band_edges_eigen(RationalFreq(2, 5), 0.5);
  REQUIRE(Se.size() == 10);
  size_t k = 0;
  for (auto& b : S.bands) {
    CHECK(std::fabs(to_d(b.lo) - Se[k++]) < 1e-12);
    CHECK(std::fabs(to_d(b.hi) - Se[k++]) < 1e-12);
  }
  k = 0;
  for (auto& b : Sm.bands) {
    CHECK(std::fabs(to_d(b.lo) - Sme[k++]) < 1e-12);
    CHECK(std::fabs(to_d(b.hi) - Sme[k++]) < 1e-12);
  }
}

TEST_CASE("f_tau q=1 closed form: (1.5, 2.5] at lambda=tau=1/2") {
  PrecisionGuard g(128);
  auto ft = f_tau(RationalFreq(0, 1), Real("0.5"), 0.5);
  CHECK(ft.j0 == 1);
  CHECK(std::fabs(to_d(ft.a) - 1.5) < 1e-12);
  CHECK(std::fabs(to_d(ft.b) - 2.5) < 1e-12);
}

TEST_CASE("band ratio slack is non-negative (growth bounds)") {
  for (double l : {0.3, 0.7}) {
    auto rep = band_ratio_check(RationalFreq(2, 5), Real(l), 0.3, 0.4);
    CHECK(to_d(rep.min_ratio_slack) >= -1e-12);
    CHECK(to_d(rep.diff_slack) >= -1e-12);
  }
}

TEST_CASE("J_delta complement and intervals partition the hull") {
  PrecisionGuard g(precision_bits_for_q(3));
  Real lam("0.5"), delta("0.05");
  auto jd = j_delta_set(RationalFreq(1, 3), lam, delta);
  CHECK(!jd.intervals.empty());
  CHECK(to_d(jd.complement_measure) > 0);
  // intervals and complement measures add up to hull + 2 margins
  Real tot = jd.complement_measure;
  for (auto& b : jd.intervals) tot += b.length();
  auto S = level_set(RationalFreq(1, 3), lam, 2 + 2 * pow(lam, 3));
  Real hull = S.hull_hi() - S.hull_lo() + 2;
  CHECK(to_d(abs(tot - hull)) < 1e-10);
}

TEST_CASE("set operations: union/intersect/diff on band sets") {
  BandSet A, B;
  A.bands = {{Real(0), Real(2)}, {Real(3), Real(4)}};
  B.bands = {{Real(1), Real("3.5")}};
  CHECK(to_d(set_measure(set_union(A, B))) == doctest::Approx(4.0));
  CHECK(to_d(set_measure(set_intersect(A, B))) == doctest::Approx(1.5));
  CHECK(to_d(set_measure(set_diff(A, B))) == doctest::Approx(1.5));
  auto gp = gaps(A);
  REQUIRE(gp.size() == 1);
  CHECK(to_d(gp[0].lo) == doctest::Approx(2.0));
  CHECK(to_d(gp[0].hi) == doctest::Approx(3.0));
}
