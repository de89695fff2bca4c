#include "doctest.h"

#include "amo/frequency.hpp"
#include "amo/regularity.hpp"

#include <cmath>

using namespace amo;

TEST_CASE("W1 of the power gauge: finite geometric sum") {
  // sum_{k<=3} 2^{-2(3-k)} 2^{-k} = 15/64
  CHECK(w_transform(1, GaugeFn::omega_tilde(1.0), 3) ==
        doctest::Approx(0.234375).epsilon(1e-12));
}

TEST_CASE("divergent tails are flagged as +inf") {
  CHECK(std::isinf(w_transform(2, GaugeFn::omega(1.0), 5)));
  CHECK(std::isinf(w_transform(2, GaugeFn::omega(0.5), 5)));
  CHECK(std::isinf(w_transform(3, GaugeFn::omega(2.0), 5)));
}

TEST_CASE("iterated-transform constant stays below 4") {
  auto ot1 = GaugeFn::omega_tilde(1.0);
  auto ot_half = GaugeFn::omega_tilde(0.5);
  auto o3 = GaugeFn::omega(3.0);
  for (const GaugeFn* g : {&ot1, &ot_half, &o3}) {
    std::vector<std::pair<Real, Real>> rows;
    for (int k = 400; k >= 0; --k)
      rows.emplace_back(Real(std::exp2(-k)), Real(w_transform(1, *g, k)));
    auto w1g = GaugeFn::from_table(rows);
    double worst = 0;
    for (long j = 0; j <= 30; ++j)
      worst = std::max(worst, w_transform(2, w1g, j) / w_transform(2, *g, j));
    CHECK(worst <= 4.0 + 1e-9);
  }
}

TEST_CASE("log-gauge comparison ratio plateaus for t = 3") {
  auto o3 = GaugeFn::omega(3.0);
  auto o2 = GaugeFn::omega(2.0);
  double mx = 0, last = 0;
  for (long j = 4; j <= 40; ++j) {
    last = w_transform(2, o3, j) / to_d(o2.eval(Real(std::exp2(-(double)j))));
    mx = std::max(mx, last);
  }
  CHECK(std::isfinite(mx));
  CHECK(last < mx);  // decreasing past the knee, no divergence
}

TEST_CASE("homogeneity profile: interval is 1-homogeneous") {
  BandSet K;
  K.bands.push_back({Real(0), Real(1)});
  auto prof = homogeneity_profile(K, {0.25, 1.0});
  CHECK(prof[0].min_ratio == doctest::Approx(1.0));
  CHECK(prof[1].min_ratio == doctest::Approx(1.0));

  BandSet K2;
  K2.bands.push_back({Real(-2), Real(-1)});
  K2.bands.push_back({Real(1), Real(2)});
  auto p2 = homogeneity_profile(K2, {1.5});
  CHECK(p2[0].min_ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("Parreau-Widom sum: zero without gaps, positive with them") {
  CHECK(pw_sum(RationalFreq(0, 1), 0.5).sum == 0.0);
  CHECK(pw_sum(RationalFreq(1, 2), 0.7).sum == 0.0);  // central gap closed
  auto r3 = pw_sum(RationalFreq(1, 3), 0.5);
  REQUIRE(r3.per_gap.size() == 2);
  CHECK(r3.sum == doctest::Approx(0.572332).epsilon(1e-4));
  // per-gap max dominates a mid-gap probe
  CHECK(r3.per_gap[0] >= gamma_bar(-1.6, RationalFreq(1, 3), 0.5) - 1e-12);
}

TEST_CASE("frostman measure: full mass on an interval, symmetric split") {
  BandSet K;
  K.bands.push_back({Real(0), Real(1)});
  auto f = frostman_measure(K, GaugeFn::omega_tilde(1.0));
  CHECK(f.total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.certificate_C <= 4.0);

  BandSet K2;
  K2.bands.push_back({Real(0), Real("0.25")});
  K2.bands.push_back({Real("0.75"), Real(1)});
  auto f2 = frostman_measure(K2, GaugeFn::omega_tilde(1.0));
  double left = 0;
  for (auto& [c, m] : f2.atoms)
    if (c < 0.5) left += m;
  CHECK(left == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(f2.total - left == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("golden-chain cover costs stay bounded for the power gauge") {
  FrequencyCF cf;
  for (int i = 0; i < 11; ++i) cf.a.push_back(1);
  auto conv = cf_convergents(cf, 11);
  std::vector<RationalFreq> chain(conv.begin() + 2, conv.end());
  auto cc = hausdorff_content_upper(chain, Real(1), GaugeFn::omega_tilde(1.0));
  REQUIRE(cc.levels.size() == chain.size() - 1);
  CHECK(to_d(cc.levels.front().cost) == doctest::Approx(29.4073).epsilon(1e-3));
  for (auto& l : cc.levels) CHECK(to_d(l.cost) < 35.0);
}

TEST_CASE("Liouville-chain cover cost collapses by level") {
  auto g = GaugeFn::omega_tilde(2.0);
  auto cf = liouville_construct(g, 1.0, FrequencyCF{{Int(1)}}, 3,
                                LiouvilleRecipe::haus_opt, 1.0);
  auto conv = cf_convergents(cf, static_cast<int>(cf.a.size()));
  std::vector<RationalFreq> chain(conv.begin() + 1, conv.end());
  auto cc = hausdorff_content_upper(chain, Real(1), g);
  REQUIRE(cc.levels.size() >= 3);
  CHECK(cc.levels[0].exact);
  for (size_t i = 1; i < cc.levels.size(); ++i)
    CHECK(cc.levels[i].ln_cost < cc.levels[i - 1].ln_cost - std::log(10.0));
}
