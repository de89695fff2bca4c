#include "doctest.h"

#include "amo/green.hpp"

#include <cmath>

using namespace amo;

TEST_CASE("one- and two-site boxes match the explicit inverse") {
  auto box1 = BoxOperator::finite(0, 0, [](long) { return 1.5; });
  Cd2 z(0.3, 0.2);
  CHECK(std::abs(green_restricted(box1, 0, 0, z) - 1.0 / (Cd2(1.5) - z)) < 1e-14);

  auto box2 = BoxOperator::finite(0, 1, [](long n) { return n == 0 ? 0.7 : -0.4; });
  Cd2 z2(0.1, 0.3);
  Cd2 a = Cd2(0.7) - z2, d = Cd2(-0.4) - z2;
  Cd2 det = a * d - 1.0;
  GreenSolver s(box2, z2);
  CHECK(std::abs(s.g(0, 0) - d / det) < 1e-14);
  CHECK(std::abs(s.g(0, 1) - (-1.0 / det)) < 1e-14);
  CHECK(std::abs(s.g(1, 1) - a / det) < 1e-14);
}

TEST_CASE("free half-line decay rate is arcosh(3/2)-type") {
  auto box = BoxOperator::half(0, [](long) { return 0.0; }, 1, 0);
  GreenSolver s(box, Cd2(3.0, 0.0), 60);
  double rate = -(s.log_abs_g(0, 50) - s.log_abs_g(0, 10)) / 40.0;
  CHECK(std::fabs(rate - std::log((3.0 + std::sqrt(5.0)) / 2.0)) < 1e-12);
}

TEST_CASE("cut identities hold to near machine precision") {
  auto box = BoxOperator::amo_finite(-30, 40, RationalFreq(2, 5), 0.6, 0.3);
  CHECK(green_identities_check(box, {3}, Cd2(0.4, 0.15), 200) < 1e-12);
  CHECK(green_identities_check(box, {-12, 3, 21}, Cd2(0.4, 0.15), 200) < 1e-12);
}

TEST_CASE("resolvent column-sum identity at small imaginary part") {
  auto box = BoxOperator::amo_finite(0, 80, RationalFreq(1, 3), 0.5, 0.2);
  double eps = 1e-3;
  GreenSolver s(box, Cd2(1.0, eps));
  double sum = 0;
  for (long k = 0; k <= 80; ++k) sum += std::norm(s.g(40, k));
  double rhs = s.g(40, 40).imag() / eps;
  CHECK(std::fabs(sum - rhs) / rhs < 1e-12);
}

TEST_CASE("near-eigenvalue energies are rejected") {
  // z = V on a 1-site box is exactly singular
  auto box = BoxOperator::finite(0, 0, [](long) { return 1.0; });
  CHECK_THROWS(GreenSolver(box, Cd2(1.0, 0.0)));
}

TEST_CASE("Combes-Thomas profile on the free half-line") {
  BandSet sigma;
  sigma.bands.push_back({Real(-2), Real(2)});
  auto box = BoxOperator::half(0, [](long) { return 0.0; }, 1, 0);
  auto prof = combes_thomas_profile(box, Cd2(2.5, 0.0), 0, 200, sigma);
  CHECK(prof.kappa == doctest::Approx(0.5));
  CHECK(prof.rate == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(prof.ratio >= 1.0);
  CHECK_FALSE(prof.truncated);
}

TEST_CASE("log-kernel integral: closed form on uniform and atoms") {
  auto mu = SampleMeasure::lebesgue(0.0, 1.0);
  CHECK(std::fabs(log_kernel_integral(mu, 0.5, 0.1) - 0.58858101993128775) <
        1e-14);
  SampleMeasure nu;
  nu.atoms.push_back({0.7, 2.0});
  CHECK(std::fabs(log_kernel_integral(nu, 0.5, 0.1) -
                  2.0 * std::log1p(0.01 / 0.04)) < 1e-14);
}
