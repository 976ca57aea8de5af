// Acceptance run: one PASS/FAIL line per criterion. Exit 0 iff every failing
// criterion is listed with --known-fail.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thinshell/checks.hpp"
#include "thinshell/fit.hpp"
#include "thinshell/registry.hpp"
#include "thinshell/shell.hpp"
#include "thinshell/suite.hpp"

using namespace thinshell;

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kCurvTol = 1e-8;
constexpr double kGeomSeconds = 1.0;
constexpr double kDetTol = 1e-6;
constexpr double kDetSeconds = 2.0;
constexpr double kVolumeTol = 1e-8;
constexpr double kMinSlope = 0.95;
constexpr double kAveExactTol = 1e-12;
constexpr double kAveDerTol = 1e-6;
constexpr double kConLpWindow = 0.05;
constexpr double kHalfSlope = 0.45;
constexpr double kGrowth = 3.0;
constexpr double kSuiteSeconds = 60.0;
constexpr double kGronwallTol = 1e-6;
constexpr double kRefineSlope = 0.02;
constexpr double kRefineConstant = 0.05;
constexpr int kMinMembers = 3;

const std::vector<std::string> kSurfaces{"sphere", "torus", "perturbed_sphere"};

const std::map<std::string, double> kIdentityTol{
    {"eximp_bo", 1e-10},  {"exp_bo", 1e-10},          {"nsl_identity", 1e-8}, {"nsl_identity_friction", 1e-8},
    {"curl_exp", 1e-9},   {"trilinear_split", 1e-10}, {"ibp_st", 1e-6},       {"ibp_st_slip", 1e-6},
    {"ibp_curl", 1e-6},
};
const std::vector<std::string> kSlopeOne{"ave_diff_dom", "poin_nor", "poin_dnor", "pdnu_wu",  "avet_diff_dom",
                                         "ave_inner",    "add_dom",  "dnu_n_ave", "eximp_div", "comp_p",
                                         "comp_w",       "tau_diff", "po_ur"};
const std::vector<std::string> kSlopeHalf{"ave_div_lp", "ave_n_lp"};
const std::vector<std::string> kBounded{"la_surf", "la_r2",       "agmon",   "prod_surf",  "prod_ua",
                                        "tan_curl_ua", "g_bound", "linf_ur", "po_grad_ur", "coercivity"};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("  FAIL " + what);
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string tag(const CheckResult& r) { return r.surface + "/" + r.name; }

bool applies(const CheckResult& r) { return r.verdict != "skipped"; }

// All registry results per surface, run once and shared by criteria 4-7.
struct SuiteRuns {
  std::map<std::string, std::map<std::string, CheckResult>> by_surface;
  std::map<std::string, double> seconds;
  std::map<std::string, std::unique_ptr<Surface>> surfaces;
};

SuiteRuns run_registry(const RunOptions& opt) {
  SuiteRuns s;
  for (const auto& name : kSurfaces) {
    s.surfaces[name] = make_surface(name);
    CheckEnv env;
    env.S = s.surfaces[name].get();
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = run_suite(check_names(), env, opt);
    s.seconds[name] = seconds_since(t0);
    for (const auto& r : results) s.by_surface[name][r.name] = r;
  }
  return s;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const char* name : {"sphere", "torus"}) {
    const auto S = make_surface(name);
    double worst = 0.0, curv = 0.0;
    for (int k = 0; k < 200; ++k) {
      const GeometryPack g = geometry_at(*S, S->sample(U(rng), U(rng)));
      double r = 0.0;
      for (int i = 0; i < 9; ++i) {
        r = std::max(r, std::abs(g.W.a[i] - transpose(g.W).a[i]));
        r = std::max(r, std::abs((g.W * g.P).a[i] - g.W.a[i]));
        r = std::max(r, std::abs((g.P * g.W).a[i] - g.W.a[i]));
      }
      r = std::max(r, norm(g.W * g.n));
      Eigen::Matrix3d A;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = 0.5 * (g.W(i, j) + g.W(j, i));
      const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(A).eigenvalues();
      std::array<double, 3> want{0.0, g.kappa1, g.kappa2};
      std::sort(want.begin(), want.end());
      for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(ev[i] - want[i]));
      worst = std::max(worst, r);
      if (std::string(name) == "sphere")
        curv = std::max({curv, std::abs(g.kappa1 + 1.0), std::abs(g.kappa2 + 1.0), std::abs(g.H + 2.0)});
    }
    o.require(worst <= kGeomTol, std::string(name) + fmt(": identity residual %.3e", worst));
    o.details.push_back(std::string("  ") + name + fmt(": worst identity residual %.3e", worst));
    if (std::string(name) == "sphere") {
      o.require(curv <= kCurvTol, fmt("sphere curvature error %.3e", curv));
      o.details.push_back(fmt("  sphere: worst curvature error %.3e", curv));
    }
  }
  const double t = seconds_since(t0);
  o.require(t < kGeomSeconds, fmt("runtime %.3f s", t));
  o.details.push_back(fmt("  runtime %.3f s", t));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : kSurfaces) {
    const auto S = make_surface(name);
    ShellConfig cfg = default_shell(*S, 0.1);  // nonconstant g0, g1 by default
    if (name == "torus") cfg.g0 = ThicknessFn::parse("custom:wave:-0.3,0.1");
    const double e = determinant_identity_check(*S, cfg, 100);
    o.require(e <= kDetTol, name + fmt(": max relative error %.3e", e));
    o.details.push_back("  " + name + " (g0 " + cfg.g0.str() + ", g1 " + cfg.g1.str() + fmt("): %.3e", e));
  }
  const double t = seconds_since(t0);
  o.require(t < kDetSeconds, fmt("runtime %.3f s", t));
  o.details.push_back(fmt("  runtime %.3f s", t));
  return o;
}

Outcome criterion3(const SuiteRuns& s) {
  Outcome o;
  const auto S = make_sphere();
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    for (auto [g0, g1] : {std::pair{0.0, 1.0}, std::pair{-0.5, 0.5}, std::pair{-0.3, 1.2}}) {
      ShellConfig cfg = default_shell(*S, eps);
      cfg.g0 = ThicknessFn::parse("const:" + std::to_string(g0));
      cfg.g1 = ThicknessFn::parse("const:" + std::to_string(g1));
      const ShellContext ctx(*S, cfg);
      const double exact = 4.0 * M_PI / 3.0 * (std::pow(1.0 + eps * g1, 3) - std::pow(1.0 + eps * g0, 3));
      const double rel = std::abs(shell_volume(ctx) - exact) / exact;
      o.require(rel <= kVolumeTol, fmt("volume eps %.3g g1 %.3g: rel %.3e", eps, g1, rel));
    }
  }
  o.details.push_back("  sphere shell volumes: 12 configurations checked against the closed form");
  for (const auto& name : kSurfaces) {
    const CheckResult& r = s.by_surface.at(name).at("jac_diff");
    o.require(r.slope >= kMinSlope, tag(r) + fmt(" slope %.4f", r.slope));
    o.details.push_back("  " + tag(r) + fmt(": slope %.4f", r.slope));
  }
  return o;
}

Outcome criterion4(const SuiteRuns& s) {
  Outcome o;
  for (const auto& name : kSurfaces) {
    const CheckResult& a = s.by_surface.at(name).at("ave_exact");
    o.require(a.residual <= kAveExactTol, tag(a) + fmt(" residual %.3e", a.residual));
    const CheckResult& d = s.by_surface.at(name).at("ave_der");
    o.require(d.series.size() >= 3, tag(d) + " fewer than 3 fields");
    o.require(d.residual <= kAveDerTol, tag(d) + fmt(" relative error %.3e", d.residual));
    o.details.push_back("  " + name + fmt(": M(ext eta) - eta %.3e, average gradient vs chart FD %.3e (%g fields)",
                                          a.residual, d.residual, static_cast<double>(d.series.size())));
  }
  return o;
}

Outcome criterion5(const SuiteRuns& s) {
  Outcome o;
  for (const auto& [check, tol] : kIdentityTol) {
    int ran = 0;
    for (const auto& name : kSurfaces) {
      const CheckResult& r = s.by_surface.at(name).at(check);
      if (!applies(r)) continue;
      ++ran;
      o.require(r.eps.size() == 1 && r.eps[0] == 0.05, tag(r) + " not evaluated at eps 0.05");
      o.require(r.residual <= tol, tag(r) + fmt(" residual %.3e > %.0e", r.residual, tol));
      o.details.push_back("  " + tag(r) + fmt(": %.3e (tol %.0e)", r.residual, tol));
    }
    o.require(ran > 0, check + " ran on no surface");
  }
  return o;
}

Outcome criterion6(const SuiteRuns& s) {
  Outcome o;
  auto members_ok = [&](const CheckResult& r) {
    const CheckDef* d = find_check(r.name);
    const bool fields = d->family != "-";
    if (fields) o.require(static_cast<int>(r.series.size()) >= kMinMembers, tag(r) + " fewer than 3 fields");
  };
  auto slope_line = [&](const CheckResult& r, double lo) {
    o.require(r.slope >= lo, tag(r) + fmt(" slope %.4f < %.2f", r.slope, lo));
    o.details.push_back("  " + tag(r) + fmt(": slope %.4f (>= %.2f)", r.slope, lo));
  };
  for (const auto& name : kSurfaces) {
    const auto& R = s.by_surface.at(name);
    const CheckResult& c = R.at("con_lp_p2");
    members_ok(c);
    o.require(std::abs(c.slope - 0.5) <= kConLpWindow, tag(c) + fmt(" slope %.4f", c.slope));
    o.details.push_back("  " + tag(c) + fmt(": slope %.4f (0.5 +- %.2f)", c.slope, kConLpWindow));
    for (const auto& n : kSlopeOne) {
      const CheckResult& r = R.at(n);
      if (!applies(r)) continue;
      members_ok(r);
      slope_line(r, kMinSlope);
    }
    for (const auto& n : kSlopeHalf) {
      const CheckResult& r = R.at(n);
      members_ok(r);
      slope_line(r, kHalfSlope);
    }
    const CheckResult& w = R.at("eximp_wmp");
    std::vector<double> C(w.eps.size(), 0.0);
    for (const auto& m : w.series)
      for (size_t i = 0; i < C.size(); ++i) C[i] = std::max(C[i], m.ratio[i] / std::sqrt(w.eps[i]));
    const auto [mn, mx] = std::minmax_element(C.begin(), C.end());
    o.require(*mx / *mn <= kGrowth, tag(w) + fmt(" constant growth %.3f", *mx / *mn));
    o.details.push_back("  " + tag(w) + fmt(": sup-constant growth %.3f (<= 3)", *mx / *mn));
    o.require(s.seconds.at(name) < kSuiteSeconds, name + fmt(" full suite %.1f s", s.seconds.at(name)));
    o.details.push_back("  " + name + fmt(": full registry runtime %.1f s", s.seconds.at(name)));
  }
  return o;
}

Outcome criterion7(const SuiteRuns& s, const std::map<std::string, double>& ceilings) {
  Outcome o;
  for (const auto& n : kBounded) {
    int ran = 0;
    for (const auto& name : kSurfaces) {
      const CheckResult& r = s.by_surface.at(name).at(n);
      if (!applies(r)) continue;
      ++ran;
      const CheckDef* d = find_check(n);
      double ceiling = d->fixed_ceiling;
      if (ceiling == 0.0) {
        const auto it = ceilings.find(tag(r));
        o.require(it != ceilings.end(), tag(r) + " has no recorded ceiling");
        if (it != ceilings.end()) ceiling = it->second;
      }
      if (n == "la_r2") o.require(ceiling == 1.0, "la_r2 ceiling is not the explicit constant");
      o.require(r.growth < kGrowth, tag(r) + fmt(" variation %.3f", r.growth));
      o.require(ceiling > 0.0 && r.constant <= ceiling, tag(r) + fmt(" constant %.4g > ceiling %.4g", r.constant, ceiling));
      o.details.push_back("  " + tag(r) + fmt(": constant %.4g, ceiling %.4g, variation %.3f", r.constant, ceiling, r.growth));
    }
    o.require(ran > 0, n + " ran on no surface");
  }
  return o;
}

Outcome criterion8(const SuiteRuns& s) {
  Outcome o;
  const int n = 20001;
  const double dt = 1.0 / (n - 1);
  std::vector<double> one(n, 1.0), zero(n, 0.0), et(n), t(n);
  for (int k = 0; k < n; ++k) {
    t[k] = k * dt;
    et[k] = std::exp(t[k]);
  }
  struct Case {
    const char* what;
    std::vector<double> z, xi, zeta;
    double expect;
  };
  const std::vector<Case> cases{{"z = 1", one, zero, zero, 1.0},
                                {"z = e^t, xi = 1", et, one, zero, (std::exp(1.0) - 1.0) * std::exp(1.0)},
                                {"z = t, zeta = 1", t, zero, one, 1.5}};
  for (const auto& c : cases) {
    const GronwallResult r = gronwall_bound(c.z, c.xi, c.zeta, 0.0, dt, 0.0, 1.0);
    const double rel = std::abs(r.bound - c.expect) / c.expect;
    o.require(rel <= kGronwallTol && r.holds, std::string(c.what) + fmt(": rel %.3e", rel));
    o.details.push_back(std::string("  ") + c.what + fmt(": bound %.10f, expected %.10f, rel %.3e", r.bound, c.expect, rel));
  }
  const CheckResult& g = s.by_surface.at("sphere").at("gronwall_cases");
  o.require(g.verdict == "pass", "registry gronwall_cases " + g.verdict);
  return o;
}

Outcome criterion9(const SuiteRuns& s, const RunOptions& opt) {
  Outcome o;
  std::vector<std::string> names{"con_lp_p2", "eximp_wmp"};
  names.insert(names.end(), kSlopeOne.begin(), kSlopeOne.end());
  names.insert(names.end(), kSlopeHalf.begin(), kSlopeHalf.end());
  names.insert(names.end(), kBounded.begin(), kBounded.end());
  RunOptions fine_opt = opt;
  fine_opt.probe = false;
  for (const auto& name : kSurfaces) {
    CheckEnv env;
    env.S = s.surfaces.at(name).get();
    env.refine = 2;
    const auto fine = run_suite(names, env, fine_opt);
    double ws = 0.0, wc = 0.0;
    for (const auto& f : fine) {
      const CheckResult& c = s.by_surface.at(name).at(f.name);
      if (!applies(c) || c.vacuous) continue;
      const double ds = std::abs(f.slope - c.slope);
      const double dc = std::abs(f.constant - c.constant) / std::max(std::abs(c.constant), 1e-300);
      o.require(ds <= kRefineSlope, tag(f) + fmt(" slope change %.4f", ds));
      o.require(dc <= kRefineConstant, tag(f) + fmt(" constant change %.2f%%", 100.0 * dc));
      ws = std::max(ws, ds);
      wc = std::max(wc, dc);
    }
    o.details.push_back("  " + name + fmt(": worst slope change %.3e, worst constant change %.3e%%", ws, 100.0 * wc));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  std::string ceilings_path = default_ceilings_path();
  app.add_option("--known-fail", known, "criteria expected to fail")->delimiter(',');
  app.add_option("--ceilings", ceilings_path, "ceilings baseline");
  CLI11_PARSE(app, argc, argv);

  RunOptions opt;
  opt.ceilings = load_ceilings(ceilings_path);

  std::map<int, Outcome> out;
  out[1] = criterion1();
  out[2] = criterion2();
  const SuiteRuns runs = run_registry(opt);
  out[3] = criterion3(runs);
  out[4] = criterion4(runs);
  out[5] = criterion5(runs);
  out[6] = criterion6(runs);
  out[7] = criterion7(runs, opt.ceilings);
  out[8] = criterion8(runs);
  out[9] = criterion9(runs, opt);

  const std::set<int> known_set(known.begin(), known.end());
  bool ok = true;
  for (const auto& [k, o] : out) {
    for (const auto& d : o.details) std::printf("%s\n", d.c_str());
    const bool expected = known_set.count(k) > 0;
    std::printf("criterion %d: %s%s\n", k, o.pass ? "PASS" : "FAIL",
                !o.pass && expected ? " (known)" : (o.pass && expected ? " (listed as known failure)" : ""));
    if (!o.pass && !expected) ok = false;
  }
  std::fflush(stdout);
  return ok ? 0 : 1;
}
