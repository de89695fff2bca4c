// amo: command-line front end over the core library. Emits CSV/JSON artifacts
// with an embedded config hash so identical configurations reproduce
// byte-identical outputs.

#include "CLI11.hpp"
#include "json.hpp"

#include "amo/bigq.hpp"
#include "amo/cocycle.hpp"
#include "amo/dos.hpp"
#include "amo/experiments.hpp"
#include "amo/frequency.hpp"
#include "amo/gauge.hpp"
#include "amo/green.hpp"
#include "amo/regularity.hpp"
#include "amo/spectrum.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace amo;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  unsigned precision_bits = 128;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  int jobs = 1;  // recorded; execution is serial and deterministic
  std::map<std::string, std::string> extra;  // constants/tolerances from file
};

// Ordered key=value view of everything that influenced a run.
using KV = std::map<std::string, std::string>;

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const KV& kv) {
  std::string flat;
  for (const auto& [k, v] : kv) flat += k + "=" + v + "\n";
  return fnv1a_hex(flat);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k.empty()) continue;
    if (k == "precision_bits") cfg.precision_bits = std::stoul(v);
    else if (k == "seed") cfg.seed = std::stoull(v);
    else if (k == "output_dir") cfg.output_dir = v;
    else if (k == "jobs") cfg.jobs = std::stoi(v);
    else cfg.extra[k] = v;
  }
}

KV base_kv(const RunConfig& cfg, const std::string& cmd) {
  KV kv;
  kv["command"] = cmd;
  kv["precision_bits"] = std::to_string(cfg.precision_bits);
  kv["seed"] = std::to_string(cfg.seed);
  kv["jobs"] = std::to_string(cfg.jobs);
  for (const auto& [k, v] : cfg.extra) kv["cfg." + k] = v;
  return kv;
}

void write_text(const RunConfig& cfg, const std::string& name,
                const std::string& body) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(std::filesystem::path(cfg.output_dir) / name,
                    std::ios::binary);
  out << body;
}

std::string csv_header(const std::string& cmd, const KV& kv,
                       const std::string& columns) {
  std::ostringstream os;
  os << "# amo " << cmd << " v" << kVersion << "\n"
     << "# config_hash=" << config_hash(kv) << "\n"
     << columns << "\n";
  return os.str();
}

json json_envelope(const std::string& cmd, const KV& kv) {
  json j;
  j["command"] = cmd;
  j["version"] = kVersion;
  j["config_hash"] = config_hash(kv);
  json c = json::object();
  for (const auto& [k, v] : kv) c[k] = v;
  j["config"] = c;
  return j;
}

GaugeFn gauge_from_args(const std::string& family, double t) {
  if (family == "omega") return GaugeFn::omega(t);
  if (family == "omega_tilde") return GaugeFn::omega_tilde(t);
  throw std::invalid_argument("unknown gauge family: " + family);
}

// ---------------------------------------------------------------------------
// verify suite: fixed deterministic battery, one line per check.

struct Check {
  std::string name;
  bool pass;
};

std::vector<Check> run_core_suite() {
  std::vector<Check> out;
  auto add = [&](const std::string& n, bool p) { out.push_back({n, p}); };

  {  // Chambers residual at q=5
    PrecisionGuard g(precision_bits_for_q(5));
    RationalFreq pq(2, 5);
    Real lam(0.3);
    std::vector<Real> Es, ths;
    for (int i = 0; i < 9; ++i) Es.push_back(Real(-3) + Real(6) * i / 8);
    for (int i = 0; i < 8; ++i) ths.push_back(2 * pi_real() * i / 8);
    add("chambers_q5", chambers_residual(pq, lam, Es, ths) < Real(1e-9));
  }
  {  // S_minus(1/2, 0.5) closed form
    PrecisionGuard g(128);
    BandSet s = level_set(RationalFreq(1, 2), Real(0.5), Real(1.5));
    bool ok = s.bands.size() == 2;
    if (ok)
      ok = abs(to_d(s.bands[0].lo) + 2) < 1e-12 &&
           abs(to_d(s.bands[0].hi) + 1) < 1e-12 &&
           abs(to_d(s.bands[1].lo) - 1) < 1e-12 &&
           abs(to_d(s.bands[1].hi) - 2) < 1e-12;
    add("sminus_half_closed_form", ok);
  }
  {  // duality: kappa = 1/lambda wins
    auto rep = duality_check(RationalFreq(1, 3), Real(0.5));
    add("duality_inverse_wins", rep.winner_is_inverse);
  }
  {  // green cut identities on a 71-site box
    BoxOperator box =
        BoxOperator::amo_finite(0, 70, RationalFreq(34, 55), 0.9, 0.37);
    double res = green_identities_check(box, {17, 35, 52}, {0.4, 0.15}, 25, 1);
    add("green_identities", res < 1e-10);
  }
  {  // W1 of s^1 at 2^-3: 15/64 + tail bound margin
    double w = w_transform(1, GaugeFn::omega_tilde(1), 3);
    add("w1_power_gauge", std::fabs(w - 0.234375) < 1e-12);
  }
  {  // log-kernel closed form
    double v = log_kernel_integral(SampleMeasure::lebesgue(0, 1), 0.5, 0.1);
    add("log_kernel_uniform", std::fabs(v - 0.58858101993128775) < 1e-12);
  }
  {  // ids monotone on a grid, q=5
    PrecisionGuard g(precision_bits_for_q(5));
    RationalFreq pq(2, 5);
    Real lam(0.7);
    bool mono = true;
    Real prev(-1);
    for (int i = 0; i <= 24; ++i) {
      Real N = ids_averaged(Real(-4) + Real(8) * i / 24, pq, lam);
      if (N < prev) mono = false;
      prev = N;
    }
    add("ids_averaged_monotone", mono);
  }
  {  // avalanche generated instance verifies
    auto inst = avalanche_generate(50, 0.05, 0.25, 20240901);
    auto rep = avalanche_check(inst);
    add("avalanche_instance", rep.conclusion_holds &&
                                  rep.cond1_margin >= 0 && rep.cond2_margin >= 0 &&
                                  rep.cond3_margin >= 0 && rep.init_margin >= 0);
  }
  {  // golden-mean beta estimate is ~0
    FrequencyCF cf;
    for (int i = 0; i < 20; ++i) cf.a.push_back(1);
    add("beta_golden_zero", beta_estimate(cf, 18).per_n.back().second < 0.01);
  }
  {  // lyapunov engines agree at q=13
    PrecisionGuard g(256);
    RationalFreq pq(5, 13);
    CReal z{Real(0.5), Real(0.01)};
    double ref = to_d(lyapunov_periodic(z, pq, Real(0.7), Real(0.3)));
    double fast = lyapunov_fine({0.5, 0.01}, pq, 0.7, 0.3);
    add("lyapunov_engines_agree", std::fabs(ref - fast) < 1e-12);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost Mathieu operator toolbox"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  if (const char* env = std::getenv("AMO_CONFIG")) config_path = env;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--precision-bits", cfg.precision_bits);
  app.add_option("--seed", cfg.seed);
  app.add_option("--output-dir", cfg.output_dir);
  app.add_option("--jobs", cfg.jobs);

  // shared numeric options (decimal strings; converted under the right guard)
  long p = 0, q = 1, p2 = 0, q2 = 1;
  std::string lambda_s = "0.5", theta_s = "0", tau_s = "0.5";
  std::string level_s = "std";
  double re = 0, im = 0.1, r_par = 1.0, C1 = 1.0, c0 = 0.01, t_par = 1.0;
  long a_box = 0, b_box = 100, n_site = 0, m_site = 0, L_box = 100000;
  int levels = 3, grid_n = 101, samples = 25, n_av = 50;
  double b_av = 0.05, c_av = 0.25;
  std::string rminus_s = "-1", rplus_s = "1", emin_s = "-3", emax_s = "3";
  std::string gauge_family = "omega_tilde";
  std::vector<long> next_list{1000, 10000, 100000};
  std::vector<long> chain;
  std::vector<double> eps_list{0.5, 0.25, 0.125};
  std::vector<long> cuts;
  bool averaged = false;
  std::string suite = "core";
  std::string recipe = "haus_opt";

  auto* bands = app.add_subcommand("bands", "level-set bands of the discriminant");
  bands->add_option("--p", p)->required();
  bands->add_option("--q", q)->required();
  bands->add_option("--lambda", lambda_s);
  bands->add_option("--level", level_s, "plus|minus|std|<decimal>");

  auto* ids = app.add_subcommand("ids", "integrated density of states on a grid");
  ids->add_option("--p", p)->required();
  ids->add_option("--q", q)->required();
  ids->add_option("--lambda", lambda_s);
  ids->add_option("--theta", theta_s);
  ids->add_flag("--averaged", averaged);
  ids->add_option("--emin", emin_s);
  ids->add_option("--emax", emax_s);
  ids->add_option("--n", grid_n);

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent at a complex energy");
  lyap->add_option("--p", p)->required();
  lyap->add_option("--q", q)->required();
  lyap->add_option("--lambda", lambda_s);
  lyap->add_option("--theta", theta_s);
  lyap->add_option("--re", re)->required();
  lyap->add_option("--im", im);

  auto* ftau = app.add_subcommand("ftau", "F_tau half-band selection");
  ftau->add_option("--p", p)->required();
  ftau->add_option("--q", q)->required();
  ftau->add_option("--lambda", lambda_s);
  ftau->add_option("--tau", tau_s);

  auto* green = app.add_subcommand("green", "restricted Green function + identities");
  green->add_option("--p", p)->required();
  green->add_option("--q", q)->required();
  green->add_option("--lambda", lambda_s);
  green->add_option("--theta", theta_s);
  green->add_option("--a", a_box);
  green->add_option("--b", b_box);
  green->add_option("--n", n_site);
  green->add_option("--m", m_site);
  green->add_option("--re", re);
  green->add_option("--im", im);
  green->add_option("--cuts", cuts);
  green->add_option("--samples", samples);

  auto* haus = app.add_subcommand("hausdorff", "cover costs along a Liouville chain");
  haus->add_option("--gauge", gauge_family, "omega|omega_tilde");
  haus->add_option("--t", t_par);
  haus->add_option("--lambda", lambda_s);
  haus->add_option("--levels", levels);
  haus->add_option("--recipe", recipe, "haus_opt|ids_opt");
  haus->add_option("--c1", C1);

  auto* homog = app.add_subcommand("homog", "homogeneity profile of S(p/q,lambda)");
  homog->add_option("--p", p)->required();
  homog->add_option("--q", q)->required();
  homog->add_option("--lambda", lambda_s);
  homog->add_option("--eps", eps_list);

  auto* pw = app.add_subcommand("pw", "Parreau-Widom gap sum");
  pw->add_option("--p", p)->required();
  pw->add_option("--q", q)->required();
  pw->add_option("--lambda", lambda_s);

  auto* dual = app.add_subcommand("duality", "coupling-inversion duality check");
  dual->add_option("--p", p)->required();
  dual->add_option("--q", q)->required();
  dual->add_option("--lambda", lambda_s);

  auto* kyfan = app.add_subcommand("kyfan", "IDS continuity inequality");
  kyfan->add_option("--p", p)->required();
  kyfan->add_option("--q", q)->required();
  kyfan->add_option("--p2", p2)->required();
  kyfan->add_option("--q2", q2)->required();
  kyfan->add_option("--lambda", lambda_s);
  kyfan->add_option("--rminus", rminus_s);
  kyfan->add_option("--rplus", rplus_s);
  kyfan->add_option("--L", L_box);

  auto* aval = app.add_subcommand("avalanche", "avalanche-principle instance");
  aval->add_option("--n", n_av);
  aval->add_option("--b", b_av);
  aval->add_option("--c", c_av);

  auto* exp_cmd = app.add_subcommand("exp", "quantitative experiments");
  exp_cmd->require_subcommand(1);
  auto* exp_ls = exp_cmd->add_subcommand("ls", "Lyapunov lower bound on J_delta");
  exp_ls->add_option("--chain", chain, "continued-fraction quotients")->required();
  exp_ls->add_option("--level", levels, "coarse level n (fine is n+1)");
  exp_ls->add_option("--lambda", lambda_s);
  exp_ls->add_option("--r", r_par);
  exp_ls->add_option("--c0", c0);
  exp_ls->add_option("--grid", grid_n);
  auto* exp_meager = exp_cmd->add_subcommand("meager", "meagerness of S∩J_delta");
  exp_meager->add_option("--qn", q, "coarse denominator")->required();
  exp_meager->add_option("--lambda", lambda_s);
  exp_meager->add_option("--delta", tau_s, "default lambda^qn");
  exp_meager->add_option("--next", next_list);
  exp_meager->add_option("--r", r_par);
  exp_meager->add_option("--c1", C1);
  auto* exp_ftau = exp_cmd->add_subcommand("ftau", "F_tau mass bounds");
  exp_ftau->add_option("--p", p)->required();
  exp_ftau->add_option("--q", q)->required();
  exp_ftau->add_option("--p2", p2)->required();
  exp_ftau->add_option("--q2", q2)->required();
  exp_ftau->add_option("--lambda", lambda_s);
  exp_ftau->add_option("--tau", tau_s);
  auto* exp_pw = exp_cmd->add_subcommand("pw", "Parreau-Widom failure mechanism");
  exp_pw->add_option("--p", p)->required();
  exp_pw->add_option("--q", q)->required();
  exp_pw->add_option("--lambda", lambda_s);
  exp_pw->add_option("--r", r_par);
  exp_pw->add_option("--c1", C1);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--suite", suite, "core");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) load_config_file(config_path, cfg);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    PrecisionGuard ambient(cfg.precision_bits);

    if (*bands) {
      KV kv = base_kv(cfg, "bands");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["level"] = level_s;
      PrecisionGuard g(precision_bits_for_q(q));
      RationalFreq pq{Int(p), Int(q)};
      Real lam(lambda_s.c_str());
      Real lamq = boost::multiprecision::pow(lam, static_cast<unsigned>(q));
      Real level = level_s == "plus" ? 2 + 2 * lamq
                   : level_s == "minus" ? 2 - 2 * lamq
                   : level_s == "std" ? Real(2)
                                      : Real(level_s.c_str());
      BandSet s = level_set(pq, lam, level);
      std::string body = csv_header("bands", kv, "index,lo,hi");
      for (size_t i = 0; i < s.bands.size(); ++i)
        body += std::to_string(i + 1) + "," + fmt(to_d(s.bands[i].lo)) + "," +
                fmt(to_d(s.bands[i].hi)) + "\n";
      write_text(cfg, "bands.csv", body);
      std::fputs(body.c_str(), stdout);
    } else if (*ids) {
      KV kv = base_kv(cfg, "ids");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["theta"] = theta_s;
      kv["averaged"] = averaged ? "1" : "0";
      kv["emin"] = emin_s; kv["emax"] = emax_s; kv["n"] = std::to_string(grid_n);
      PrecisionGuard g(precision_bits_for_q(q));
      RationalFreq pq{Int(p), Int(q)};
      Real lam(lambda_s.c_str()), th(theta_s.c_str());
      Real e0(emin_s.c_str()), e1(emax_s.c_str());
      std::string body = csv_header("ids", kv, "E,N");
      for (int i = 0; i < grid_n; ++i) {
        Real E = e0 + (e1 - e0) * i / std::max(1, grid_n - 1);
        Real N = averaged ? ids_averaged(E, pq, lam)
                          : ids_periodic(E, pq, lam, th);
        body += fmt(to_d(E)) + "," + fmt(to_d(N)) + "\n";
      }
      write_text(cfg, "ids.csv", body);
      std::fputs(body.c_str(), stdout);
    } else if (*lyap) {
      KV kv = base_kv(cfg, "lyapunov");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["theta"] = theta_s;
      kv["re"] = fmt(re); kv["im"] = fmt(im);
      PrecisionGuard g(precision_bits_for_q(q));
      RationalFreq pq{Int(p), Int(q)};
      CReal z{Real(re), Real(im)};
      double gamma =
          to_d(lyapunov_periodic(z, pq, Real(lambda_s.c_str()), Real(theta_s.c_str())));
      json j = json_envelope("lyapunov", kv);
      j["gamma"] = gamma;
      write_text(cfg, "lyapunov.json", j.dump(2) + "\n");
      std::printf("%s\n", fmt(gamma).c_str());
    } else if (*ftau) {
      KV kv = base_kv(cfg, "ftau");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["tau"] = tau_s;
      PrecisionGuard g(precision_bits_for_q(q));
      RationalFreq pq{Int(p), Int(q)};
      auto F = f_tau(pq, Real(lambda_s.c_str()), std::stod(tau_s));
      json j = json_envelope("ftau", kv);
      j["j0"] = F.j0;
      j["xi"] = F.xi;
      j["a"] = fmt(to_d(F.a));
      j["b"] = fmt(to_d(F.b));
      j["certified_length_lb"] = fmt(to_d(F.certified_length_lb));
      write_text(cfg, "ftau.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*green) {
      KV kv = base_kv(cfg, "green");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["theta"] = theta_s;
      kv["a"] = std::to_string(a_box); kv["b"] = std::to_string(b_box);
      kv["n"] = std::to_string(n_site); kv["m"] = std::to_string(m_site);
      kv["re"] = fmt(re); kv["im"] = fmt(im);
      kv["samples"] = std::to_string(samples);
      RationalFreq pq{Int(p), Int(q)};
      BoxOperator box = BoxOperator::amo_finite(
          a_box, b_box, pq, std::stod(lambda_s), std::stod(theta_s));
      Cd2 z{re, im};
      GreenSolver solver(box, z);
      json j = json_envelope("green", kv);
      Cd2 gv = solver.g(n_site, m_site);
      j["g_re"] = gv.real();
      j["g_im"] = gv.imag();
      j["log_abs_g"] = solver.log_abs_g(n_site, m_site);
      if (!cuts.empty())
        j["identities_residual"] =
            green_identities_check(box, cuts, z, samples, cfg.seed);
      write_text(cfg, "green.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*haus) {
      KV kv = base_kv(cfg, "hausdorff");
      kv["gauge"] = gauge_family; kv["t"] = fmt(t_par);
      kv["lambda"] = lambda_s; kv["levels"] = std::to_string(levels);
      kv["recipe"] = recipe; kv["c1"] = fmt(C1);
      GaugeFn gauge = gauge_from_args(gauge_family, t_par);
      LiouvilleRecipe rec = recipe == "ids_opt" ? LiouvilleRecipe::ids_opt
                                                : LiouvilleRecipe::haus_opt;
      double lam = std::stod(lambda_s);
      FrequencyCF cf =
          liouville_construct(gauge, lam, FrequencyCF{{Int(1)}}, levels, rec, C1);
      auto convs = cf_convergents(cf, static_cast<int>(cf.prefix_len()));
      std::vector<RationalFreq> chain_pq(convs.begin() + 1, convs.end());
      auto cost = hausdorff_content_upper(chain_pq, Real(lambda_s.c_str()), gauge);
      std::string body = csv_header("hausdorff", kv, "level,ln_count,ln_cost,exact");
      for (const auto& lv : cost.levels)
        body += std::to_string(lv.level) + "," +
                fmt(to_d(boost::multiprecision::log(lv.count))) + "," +
                fmt(lv.ln_cost) + "," + (lv.exact ? "1" : "0") + "\n";
      write_text(cfg, "hausdorff.csv", body);
      std::fputs(body.c_str(), stdout);
    } else if (*homog) {
      KV kv = base_kv(cfg, "homog");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s;
      for (size_t i = 0; i < eps_list.size(); ++i)
        kv["eps." + std::to_string(i)] = fmt(eps_list[i]);
      PrecisionGuard g(precision_bits_for_q(q));
      RationalFreq pq{Int(p), Int(q)};
      BandSet K = level_set(pq, Real(lambda_s.c_str()), Real(2));
      auto prof = homogeneity_profile(K, eps_list);
      std::string body = csv_header("homog", kv, "eps,min_ratio,argmin_E");
      for (const auto& pt : prof)
        body += fmt(pt.eps) + "," + fmt(pt.min_ratio) + "," + fmt(pt.argmin_E) + "\n";
      write_text(cfg, "homog.csv", body);
      std::fputs(body.c_str(), stdout);
    } else if (*pw) {
      KV kv = base_kv(cfg, "pw");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s;
      RationalFreq pq{Int(p), Int(q)};
      auto rep = pw_sum(pq, std::stod(lambda_s));
      std::string body = csv_header("pw", kv, "gap,gamma_bar_max");
      for (size_t i = 0; i < rep.per_gap.size(); ++i)
        body += std::to_string(i + 1) + "," + fmt(rep.per_gap[i]) + "\n";
      body += "sum," + fmt(rep.sum) + "\n";
      write_text(cfg, "pw.csv", body);
      std::fputs(body.c_str(), stdout);
    } else if (*dual) {
      KV kv = base_kv(cfg, "duality");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s;
      RationalFreq pq{Int(p), Int(q)};
      auto rep = duality_check(pq, Real(lambda_s.c_str()));
      json j = json_envelope("duality", kv);
      j["best_kappa"] = rep.best_kappa;
      j["winner_is_inverse"] = rep.winner_is_inverse;
      j["residual_inverse"] = to_d(rep.residual_inverse);
      j["residual_double"] = to_d(rep.residual_double);
      j["ids_residual"] = to_d(rep.ids_residual);
      write_text(cfg, "duality.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*kyfan) {
      KV kv = base_kv(cfg, "kyfan");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["p2"] = std::to_string(p2); kv["q2"] = std::to_string(q2);
      kv["lambda"] = lambda_s; kv["rminus"] = rminus_s; kv["rplus"] = rplus_s;
      kv["L"] = std::to_string(L_box);
      auto rep = kyfan_check(RationalFreq{Int(p), Int(q)},
                             RationalFreq{Int(p2), Int(q2)},
                             Real(lambda_s.c_str()), Real(rminus_s.c_str()),
                             Real(rplus_s.c_str()), L_box);
      json j = json_envelope("kyfan", kv);
      j["kappa"] = rep.kappa;
      j["lhs"] = to_d(rep.lhs);
      j["rhs"] = to_d(rep.rhs);
      j["holds"] = rep.holds;
      write_text(cfg, "kyfan.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
      if (!rep.holds) return 1;
    } else if (*aval) {
      KV kv = base_kv(cfg, "avalanche");
      kv["n"] = std::to_string(n_av); kv["b"] = fmt(b_av); kv["c"] = fmt(c_av);
      auto inst = avalanche_generate(n_av, b_av, c_av, cfg.seed);
      auto rep = avalanche_check(inst);
      json j = json_envelope("avalanche", kv);
      j["cond1_margin"] = rep.cond1_margin;
      j["cond2_margin"] = rep.cond2_margin;
      j["cond3_margin"] = rep.cond3_margin;
      j["init_margin"] = rep.init_margin;
      j["lhs"] = rep.lhs;
      j["rhs"] = rep.rhs;
      j["holds"] = rep.conclusion_holds;
      write_text(cfg, "avalanche.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
      if (!rep.conclusion_holds) return 1;
    } else if (*exp_ls) {
      KV kv = base_kv(cfg, "exp.ls");
      for (size_t i = 0; i < chain.size(); ++i)
        kv["chain." + std::to_string(i)] = std::to_string(chain[i]);
      kv["level"] = std::to_string(levels);
      kv["lambda"] = lambda_s; kv["r"] = fmt(r_par); kv["c0"] = fmt(c0);
      kv["grid"] = std::to_string(grid_n);
      FrequencyCF cf;
      for (long a : chain) cf.a.push_back(Int(a));
      auto inst = ls_instance(cf, levels, std::stod(lambda_s), r_par, c0, grid_n);
      auto rep = ls_lower_bound_check(inst);
      json j = json_envelope("exp.ls", kv);
      j["q"] = inst.pq.q_long();
      j["q_fine"] = inst.pq_fine.q_long();
      j["delta"] = inst.delta;
      j["eps"] = inst.eps;
      j["min_gamma"] = rep.min_gamma;
      j["bound"] = rep.bound;
      j["holds"] = rep.holds;
      j["eps_monotone"] = rep.eps_monotone;
      write_text(cfg, "exp_ls.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*exp_meager) {
      KV kv = base_kv(cfg, "exp.meager");
      kv["qn"] = std::to_string(q); kv["lambda"] = lambda_s;
      kv["r"] = fmt(r_par); kv["c1"] = fmt(C1);
      double lam = std::stod(lambda_s);
      double delta = exp_meager->count("--delta") ? std::stod(tau_s)
                                                  : std::pow(lam, q);
      kv["delta"] = fmt(delta);
      for (size_t i = 0; i < next_list.size(); ++i)
        kv["next." + std::to_string(i)] = std::to_string(next_list[i]);
      FrequencyCF prefix{{Int(q)}};
      auto rep = meagerness_check(prefix, lam, delta, next_list, r_par, 1.0, C1);
      json j = json_envelope("exp.meager", kv);
      json pts = json::array();
      for (const auto& pt : rep.points) {
        json e;
        e["q_fine"] = pt.fine.q_long();
        e["x"] = pt.x;
        e["ln_measure"] = pt.ln_measure;
        e["ln_bound"] = pt.ln_bound;
        e["zeros"] = pt.zero_count;
        e["sturm_defect"] = pt.sturm_defect;
        pts.push_back(e);
      }
      j["points"] = pts;
      j["slope"] = rep.slope;
      j["strictly_decreasing"] = rep.strictly_decreasing;
      j["bounds_hold"] = rep.bounds_hold;
      write_text(cfg, "exp_meager.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*exp_ftau) {
      KV kv = base_kv(cfg, "exp.ftau");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["p2"] = std::to_string(p2); kv["q2"] = std::to_string(q2);
      kv["lambda"] = lambda_s; kv["tau"] = tau_s;
      auto rep = ftau_mass_check(RationalFreq{Int(p), Int(q)}, std::stod(lambda_s),
                                 std::stod(tau_s), RationalFreq{Int(p2), Int(q2)});
      json j = json_envelope("exp.ftau", kv);
      j["rho_base"] = rep.rho_base;
      j["bound_base"] = rep.bound_base;
      j["base_holds"] = rep.base_holds;
      j["rho_partner"] = rep.rho_partner;
      j["bound_partner"] = rep.bound_partner;
      j["partner_holds"] = rep.partner_holds;
      write_text(cfg, "exp_ftau.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*exp_pw) {
      KV kv = base_kv(cfg, "exp.pw");
      kv["p"] = std::to_string(p); kv["q"] = std::to_string(q);
      kv["lambda"] = lambda_s; kv["r"] = fmt(r_par); kv["c1"] = fmt(C1);
      auto rep = pw_failure_experiment(RationalFreq{Int(p), Int(q)},
                                       std::stod(lambda_s), r_par, C1);
      json j = json_envelope("exp.pw", kv);
      j["count"] = rep.count;
      j["count_bound"] = rep.count_bound;
      j["count_holds"] = rep.count_holds;
      j["ln_pitch"] = rep.ln_pitch;
      j["ln_flen"] = rep.ln_flen;
      j["min_gamma"] = rep.min_gamma;
      j["sum_gamma"] = rep.sum_gamma;
      j["per_interval_bound"] = rep.per_interval_bound;
      j["sum_bound"] = rep.sum_bound;
      j["sum_holds"] = rep.sum_holds;
      j["sampled"] = rep.sampled;
      j["pw_independent"] = rep.pw_independent;
      write_text(cfg, "exp_pw.json", j.dump(2) + "\n");
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else if (*verify) {
      if (suite != "core") throw std::invalid_argument("unknown suite: " + suite);
      KV kv = base_kv(cfg, "verify");
      kv["suite"] = suite;
      auto checks = run_core_suite();
      json j = json_envelope("verify", kv);
      json arr = json::array();
      bool all = true;
      std::string out;
      for (const auto& c : checks) {
        all = all && c.pass;
        out += std::string(c.pass ? "ok   " : "FAIL ") + c.name + "\n";
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        arr.push_back(e);
      }
      j["checks"] = arr;
      j["all_pass"] = all;
      write_text(cfg, "verify.json", j.dump(2) + "\n");
      out += all ? "verify: all checks passed\n" : "verify: FAILURES present\n";
      std::fputs(out.c_str(), stdout);
      if (!all) return 1;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
