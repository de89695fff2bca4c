#include "doctest.h"

#include "amo/cocycle.hpp"

#include <cmath>

using namespace amo;

TEST_CASE("free Lyapunov exponent: arcosh off spectrum, zero inside") {
  PrecisionGuard g(128);
  RationalFreq free(0, 1);
  Real lam(0);
  CReal E3{Real(3), Real(0)};
  double exact = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(std::fabs(to_d(lyapunov_periodic(E3, free, lam, Real(0))) - exact) < 1e-14);
  CReal E1{Real(1), Real(0)};
  CHECK(to_d(lyapunov_periodic(E1, free, lam, Real(0))) == 0.0);
}

TEST_CASE("transfer product: unit determinant, stable for n = 10^6") {
  PrecisionGuard g(128);
  // det tracks the scale while e^{-2 log_scale} is above the cancellation
  // floor of the normalized entries (~2^-128); n = 30 keeps it there
  auto s = transfer_product(CReal{Real(3), Real(0)}, Real("0.3819660112"),
                            Real("0.5"), Real("0.1"), 30);
  CHECK(to_d(cx_abs(s.det_stored()) * boost::multiprecision::exp(2 * s.log_scale)) ==
        doctest::Approx(1.0).epsilon(1e-6));
  auto m = transfer_product(CReal{Real(3), Real(0)}, Real("0.3819660112"),
                            Real("0.5"), Real("0.1"), 1000000);
  CHECK(to_d(m.log_norm()) > 100.0);  // grows, no overflow
}

TEST_CASE("avalanche: generated instances satisfy hypotheses and conclusion") {
  for (std::uint64_t seed : {1ULL, 7ULL, 1234567ULL}) {
    auto inst = avalanche_generate(120, 0.05, 0.3, seed);
    auto rep = avalanche_check(inst);
    CHECK(rep.cond1_margin >= 0);
    CHECK(rep.cond2_margin >= 0);
    CHECK(rep.cond3_margin >= 0);
    CHECK(rep.init_margin >= 0);
    CHECK(rep.conclusion_holds);
    CHECK(rep.lhs >= rep.rhs);
  }
}

TEST_CASE("avalanche: tampering breaks a hypothesis margin") {
  auto inst = avalanche_generate(50, 0.05, 0.3, 42);
  inst.delta[10] = inst.delta[9] * 4;  // violate the slow-variation condition
  auto rep = avalanche_check(inst);
  CHECK(rep.cond1_margin < 0);
}
