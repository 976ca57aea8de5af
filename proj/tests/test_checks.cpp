#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "thinshell/checks.hpp"
#include "thinshell/errors.hpp"
#include "thinshell/families.hpp"
#include "thinshell/registry.hpp"
#include "thinshell/report.hpp"
#include "thinshell/suite.hpp"

using namespace thinshell;

namespace {

CheckEnv env_for(const Surface& S) {
  CheckEnv env;
  env.S = &S;
  return env;
}

CheckDef synthetic(CheckKind kind, double expected, double tol, MeasureFn f) {
  CheckDef d;
  d.name = "synthetic";
  d.family = "-";
  d.kind = kind;
  d.expected = expected;
  d.tol = tol;
  d.members = 2;
  d.measure = std::move(f);
  return d;
}

}  // namespace

TEST_SUITE("checks") {
  TEST_CASE("registry") {
    const auto names = check_names();
    CHECK(names.size() == check_registry().size());
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
    for (const auto& d : check_registry()) {
      CAPTURE(d.name);
      CHECK(d.measure);
      CHECK(!d.description.empty());
      CHECK(find_check(d.name) == &d);
      const std::string fam = primary_family(d);
      if (!fam.empty()) CHECK_NOTHROW(family_info(fam));
    }
    CHECK(find_check("no_such_check") == nullptr);
    for (const char* n : {"det_identity", "cov_volume", "con_lp_p2", "nsl_identity", "la_r2", "coercivity"})
      CHECK(find_check(n) != nullptr);
  }

  TEST_CASE("shell volume check") {
    const auto S = make_sphere();
    CheckEnv env = env_for(*S);
    env.base = [](ShellConfig& c) {
      c.g0 = ThicknessFn::parse("const:0");
      c.g1 = ThicknessFn::parse("const:1");
    };
    RunOptions opt;
    opt.identity_eps = 0.1;
    const CheckResult R = run_check(*find_check("cov_volume"), env, opt);
    CHECK(R.verdict == "pass");
    CHECK(R.residual <= 1e-8);
    const auto ctx = env.context(0.1);
    CHECK(shell_volume(*ctx) == doctest::Approx(1.386490).epsilon(1e-6));
  }

  TEST_CASE("constant extension scaling") {
    const auto S = make_sphere();
    const CheckResult R = run_check(*find_check("con_lp_p2"), env_for(*S), RunOptions{});
    CHECK(R.verdict == "pass");
    CHECK(std::abs(R.slope - 0.5) <= 0.05);
    CHECK(R.series.size() == 3);
    CHECK(R.eps.size() == 4);
  }

  TEST_CASE("slip identity") {
    const auto S = make_sphere();
    const CheckResult R = run_check(*find_check("nsl_identity"), env_for(*S), RunOptions{});
    CHECK(R.verdict == "pass");
    CHECK(R.residual <= 1e-8);
  }

  TEST_CASE("family overrides") {
    const auto S = make_sphere();
    RunOptions opt;
    opt.families["con_lp_p2"] = "unconstrained_smooth";
    CHECK_THROWS_AS(run_check(*find_check("con_lp_p2"), env_for(*S), opt), ConfigError);
    opt.families.clear();
    opt.families["eximp_wmp"] = "killing_sphere";
    CHECK_NOTHROW(validate_override(*find_check("eximp_wmp"), "killing_sphere"));
    CHECK_THROWS_AS(validate_override(*find_check("eximp_wmp"), "tangential_scalar"), ConfigError);
    CHECK_THROWS_AS(validate_override(*find_check("det_identity"), "tangential_scalar"), ConfigError);
    CHECK_NOTHROW(validate_override(*find_check("ave_n_lp"), "divfree_impermeable"));
    CHECK_THROWS_AS(validate_override(*find_check("poin_nor"), "unconstrained_smooth"), ConfigError);
    const CheckResult R = run_check(*find_check("eximp_wmp"), env_for(*S), opt);
    CHECK(R.family == "killing_sphere");
    CHECK(R.verdict == "pass");
  }

  TEST_CASE("unsupported configurations are skipped") {
    const auto S = make_perturbed_sphere();
    const CheckResult R = run_check(*find_check("coercivity"), env_for(*S), RunOptions{});
    CHECK(R.verdict == "skipped");
    CHECK(!R.note.empty());
  }

  TEST_CASE("verdict rules") {
    const auto S = make_sphere();
    const CheckEnv env = env_for(*S);
    RunOptions opt;
    opt.probe = false;

    SUBCASE("vacuous") {
      const auto d = synthetic(CheckKind::Upper, 1.0, 0.05, [](const CheckEnv&, double, int) { return Sample{0.0, 1.0}; });
      const CheckResult R = run_check(d, env, opt);
      CHECK(R.vacuous);
      CHECK(R.verdict == "pass (vacuous)");
    }
    SUBCASE("two-sided window") {
      auto d = synthetic(CheckKind::TwoSided, 0.5, 0.05,
                         [](const CheckEnv&, double e, int) { return Sample{std::pow(e, 0.53), 1.0}; });
      CHECK(run_check(d, env, opt).verdict == "pass");
      d.measure = [](const CheckEnv&, double e, int) { return Sample{std::pow(e, 0.57), 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "fail");
      d.measure = [](const CheckEnv&, double e, int) { return Sample{std::pow(e, 0.43), 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "fail");
    }
    SUBCASE("upper bound") {
      auto d = synthetic(CheckKind::Upper, 1.0, 0.05,
                         [](const CheckEnv&, double e, int) { return Sample{e * e, 1.0}; });
      CheckResult R = run_check(d, env, opt);
      CHECK(R.verdict == "pass");
      CHECK(R.growth == doctest::Approx(1.0));
      d.measure = [](const CheckEnv&, double e, int) { return Sample{std::pow(e, 0.9), 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "fail");
      d.measure = [](const CheckEnv&, double e, int m) { return Sample{e * (m == 1 ? 0.5 : 1.0), 1.0}; };
      R = run_check(d, env, opt);
      CHECK(R.verdict == "pass");
      CHECK(R.constant == doctest::Approx(1.0));
    }
    SUBCASE("bounded") {
      auto d = synthetic(CheckKind::Bounded, 0.0, 0.0,
                         [](const CheckEnv&, double e, int) { return Sample{1.0 + e, 1.0}; });
      CheckResult R = run_check(d, env, opt);
      CHECK(R.verdict == "pass");
      CHECK(R.note == "no recorded ceiling");
      opt.ceilings["sphere/synthetic"] = 1.1;
      R = run_check(d, env, opt);
      CHECK(R.verdict == "fail");
      CHECK(R.ceiling == 1.1);
      opt.ceilings["sphere/synthetic"] = 1.5;
      CHECK(run_check(d, env, opt).verdict == "pass");
      d.fixed_ceiling = 1.0;
      CHECK(run_check(d, env, opt).verdict == "fail");
      d.fixed_ceiling = 0.0;
      d.measure = [](const CheckEnv&, double e, int) { return Sample{0.01 / e, 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "fail");
    }
    SUBCASE("identity") {
      auto d = synthetic(CheckKind::Identity, 0.0, 1e-8, [](const CheckEnv&, double, int m) {
        return Sample{m == 0 ? 1e-10 : -5e-9, 1.0};
      });
      CheckResult R = run_check(d, env, opt);
      CHECK(R.verdict == "pass");
      CHECK(R.residual == doctest::Approx(5e-9));
      CHECK(R.eps.size() == 1);
      d.tol = 1e-9;
      CHECK(run_check(d, env, opt).verdict == "fail");
    }
    SUBCASE("fit failure") {
      const auto d = synthetic(CheckKind::Upper, 1.0, 0.05, [](const CheckEnv&, double e, int) {
        return Sample{e > 0.06 ? e : 0.0, 1.0};
      });
      const CheckResult R = run_check(d, env, opt);
      CHECK(R.verdict == "fail");
      CHECK(R.note.find("fit failed") != std::string::npos);
    }
    SUBCASE("refinement probe") {
      opt.probe = true;
      auto d = synthetic(CheckKind::Upper, 1.0, 0.05, [](const CheckEnv& en, double e, int) {
        return Sample{e * (en.refine > 1 ? 1.02 : 1.0), 1.0};
      });
      CheckResult R = run_check(d, env, opt);
      CHECK(R.verdict == "inconclusive");
      CHECK(R.probe_change == doctest::Approx(0.02));
      d.measure = [](const CheckEnv& en, double e, int) { return Sample{e * (en.refine > 1 ? 1.005 : 1.0), 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "pass");
      d.pointwise = true;
      d.measure = [](const CheckEnv& en, double e, int) { return Sample{e * (en.refine > 1 ? 2.0 : 1.0), 1.0}; };
      CHECK(run_check(d, env, opt).verdict == "pass");
    }
    SUBCASE("too few eps values") {
      opt.eps = {0.1, 0.05};
      const auto d = synthetic(CheckKind::Upper, 1.0, 0.05, [](const CheckEnv&, double e, int) { return Sample{e, 1.0}; });
      CHECK_THROWS_AS(run_check(d, env, opt), ConfigError);
    }
  }

  TEST_CASE("suite runner matches sequential runs") {
    const auto S = make_torus();
    const CheckEnv env = env_for(*S);
    const RunOptions opt;
    const std::vector<std::string> names{"jac_diff", "con_lp_p2", "det_identity", "comp_p"};
    const auto par = run_suite(names, env, opt, 3);
    REQUIRE(par.size() == names.size());
    for (size_t i = 0; i < names.size(); ++i) {
      CHECK(par[i].name == names[i]);
      const CheckResult seq = run_check(*find_check(names[i]), env, opt);
      CHECK(results_json({seq}) == results_json({par[i]}));
    }
    CHECK_THROWS_AS(run_suite({"nope"}, env, opt, 1), ConfigError);
  }

  TEST_CASE("reports") {
    const auto S = make_sphere();
    const CheckResult R = run_check(*find_check("con_lp_p2"), env_for(*S), RunOptions{});
    const std::string j = results_json({R});
    CHECK(j.find("\"name\": \"con_lp_p2\"") != std::string::npos);
    CHECK(j == results_json({R}));
    const std::string csv = results_csv({R});
    CHECK(csv.rfind("name,family,eps_min,eps_max,slope,residual,constant,verdict\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    const std::string series = series_csv(R);
    CHECK(std::count(series.begin(), series.end(), '\n') == 1 + 3 * 4);
    CHECK(plot_svg(R).find("<svg") != std::string::npos);
    CHECK(fmt17(0.1) == "0.10000000000000001");

    CheckResult bad = R;
    bad.slope = NAN;
    CHECK(results_json({bad}).find("\"slope\": null") != std::string::npos);

    CheckResult f = R, inc = R, sk = R;
    f.verdict = "fail";
    inc.verdict = "inconclusive";
    sk.verdict = "skipped";
    CHECK(exit_code({R, sk}) == 0);
    CHECK(exit_code({R, inc}) == 3);
    CHECK(exit_code({R, f, inc}) == 1);
  }
}
