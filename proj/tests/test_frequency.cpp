#include "doctest.h"

#include "amo/frequency.hpp"

using namespace amo;

TEST_CASE("golden convergents are Fibonacci ratios") {
  FrequencyCF cf;
  for (int i = 0; i < 12; ++i) cf.a.push_back(1);
  auto conv = cf_convergents(cf, 12);
  long fib[14] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};
  CHECK(conv[1].q == Int(1));  // 1/1 stored reduced mod 1 as 0/1
  for (int n = 2; n <= 12; ++n) {
    CHECK(conv[static_cast<size_t>(n)].q == Int(fib[n]));
    CHECK(conv[static_cast<size_t>(n)].p == Int(fib[n - 1]));
  }
}

TEST_CASE("rational_gap encloses the true distance") {
  PrecisionGuard g(256);
  FrequencyCF cf{{Int(3), Int(7), Int(15), Int(1), Int(292)}};  // pi-1 style tail
  auto conv = cf_convergents(cf, 4);
  // reference alpha from a deeper truncation
  FrequencyCF deep = cf;
  deep.a.push_back(Int(2));
  deep.a.push_back(Int(5));
  auto ref = cf_convergents(deep, 6).back().value();
  for (int n = 1; n <= 3; ++n) {
    auto [lo, hi] = rational_gap(cf, n);
    Real d = boost::multiprecision::abs(ref - conv[static_cast<size_t>(n)].value());
    CHECK(lo <= d);
    CHECK(d <= hi);
  }
}

TEST_CASE("beta estimate: golden is zero, Liouville-style grows") {
  FrequencyCF golden;
  for (int i = 0; i < 20; ++i) golden.a.push_back(1);
  CHECK(beta_estimate(golden, 18).per_n.back().second < 0.01);

  FrequencyCF liou{{Int(3), Int(100000)}};
  auto be = beta_estimate(liou, 2);
  CHECK(be.running_max > 3.0);  // ln(300001)/3
}

TEST_CASE("gauge decay admissibility") {
  CHECK(GaugeFn::omega_tilde(1.0).decay_admissible());
  CHECK(GaugeFn::omega_tilde(2.0).decay_admissible());
  CHECK_FALSE(GaugeFn::omega(0.5).decay_admissible());
  CHECK_FALSE(GaugeFn::omega(1.0).decay_admissible());
}

TEST_CASE("liouville_construct haus_opt chain is reproducible") {
  auto g = GaugeFn::omega_tilde(2.0);
  FrequencyCF prefix{{Int(1)}};
  std::vector<LiouvilleLevelTrace> trace;
  auto cf = liouville_construct(g, 1.0, prefix, 3, LiouvilleRecipe::haus_opt,
                                1.0, &trace);
  auto conv = cf_convergents(cf, static_cast<int>(cf.a.size()));
  REQUIRE(conv.size() >= 5);
  CHECK(conv[2].q == Int(8));
  CHECK(conv[3].q == Int(57857));
  CHECK(msb(conv[4].q) == 83486);  // ~2^83486: far beyond double range
  CHECK(trace.size() == 3);
}

TEST_CASE("gauge table log interpolation and inverse") {
  std::vector<std::pair<Real, Real>> rows;
  for (int k = 20; k >= 1; --k)
    rows.emplace_back(Real(std::exp2(-k)), Real(std::exp2(-2 * k)));  // s^2
  auto g = GaugeFn::from_table(rows);
  PrecisionGuard guard(256);
  // interior point: log-log linear interpolation of s^2 is exact
  Real s("0.0001");
  CHECK(to_d(boost::multiprecision::abs(g.eval(s) - s * s)) < 1e-12);
  Real ln_y = g.log_eval(boost::multiprecision::log(s));
  CHECK(to_d(boost::multiprecision::abs(g.log_inv(ln_y) -
                                        boost::multiprecision::log(s))) < 1e-9);
}

TEST_CASE("omega_t clamp is continuous and monotone at s = e^-2") {
  auto g = GaugeFn::omega(2.0);
  PrecisionGuard guard(128);
  Real below = g.log_eval(Real(-2.000001));
  Real above = g.log_eval(Real(-1.999999));
  CHECK(to_d(above - below) > 0);
  CHECK(to_d(above - below) < 1e-4);
}
