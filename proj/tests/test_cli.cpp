#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(THINSHELL_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& tag) {
  const fs::path log = fs::path(THINSHELL_TEST_TMP) / (tag + ".log");
  fs::create_directories(log.parent_path());
  const std::string cmd = std::string("\"") + THINSHELL_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(run("", "noargs").code == 2);
    CHECK(run("frobnicate", "badcmd").code == 2);
    CHECK(run("check --only no_such_check", "unknown").code == 2);
    CHECK(run("check --surface cube --only con_lp_p2", "badsurface").code == 2);
    CHECK(run("check --format xml --only con_lp_p2", "badformat").code == 2);
    const Run empty = run("check --out " + tmp_dir("empty").string(), "empty");
    CHECK(empty.code == 2);
    CHECK(empty.out.find("no checks selected") != std::string::npos);
    const Run two = run("sweep --only con_lp_p2 --eps 0.1,0.05 --out " + tmp_dir("two").string(), "two");
    CHECK(two.code == 2);
    CHECK(run("check --config /nonexistent.json --only con_lp_p2", "noconfig").code == 2);
  }

  TEST_CASE("single check writes one row") {
    const fs::path out = tmp_dir("single");
    const Run r = run("check --only con_lp_p2 --out " + out.string(), "single");
    CHECK(r.code == 0);
    const std::string csv = slurp(out / "results.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find("\ncon_lp_p2,") != std::string::npos);
    CHECK(fs::exists(out / "results.json"));
    CHECK(!fs::exists(out / "plots"));
  }

  TEST_CASE("json output is deterministic") {
    const fs::path a = tmp_dir("det_a"), b = tmp_dir("det_b");
    const std::string args = "check --surface torus --only jac_diff,con_lp_p2,det_identity --format json --out ";
    REQUIRE(run(args + a.string(), "det_a").code == 0);
    REQUIRE(run(args + b.string(), "det_b").code == 0);
    const std::string ja = slurp(a / "results.json");
    CHECK(!ja.empty());
    CHECK(ja == slurp(b / "results.json"));
    CHECK(!fs::exists(a / "results.csv"));
  }

  TEST_CASE("config file with flag overrides") {
    const fs::path out = tmp_dir("cfg");
    const fs::path cfg = out / "run.json";
    std::ofstream(cfg) << R"({"surface": "torus", "checks": ["det_identity"], "eps": [0.2, 0.1, 0.05],
                           "formats": ["csv"], "out": "unused"})";
    const Run r = run("check --config " + cfg.string() + " --surface sphere --out " + out.string(), "cfg");
    CHECK(r.code == 0);
    CHECK(r.out.find("det_identity") != std::string::npos);
    CHECK(fs::exists(out / "results.csv"));
    CHECK(!fs::exists(out / "results.json"));
    CHECK(!fs::exists("unused"));
  }

  TEST_CASE("sweep writes tables and plots") {
    const fs::path out = tmp_dir("sweep");
    const Run r = run("sweep --only con_lp_p2,la_r2 --eps 0.2,0.1,0.05 --out " + out.string(), "sweep");
    CHECK(r.code == 0);
    for (const char* n : {"con_lp_p2", "la_r2"}) {
      CHECK(fs::exists(out / "tables" / (std::string(n) + ".csv")));
      const std::string svg = slurp(out / "plots" / (std::string(n) + ".svg"));
      CHECK(svg.find("<svg") != std::string::npos);
    }
  }

  TEST_CASE("geometry report") {
    const Run r = run("geom --surface sphere --eps 0.1", "geom");
    CHECK(r.code == 0);
    CHECK(r.out.find("kappa1 in [-1, -1]") != std::string::npos);
    CHECK(r.out.find("kappa2 in [-1, -1]") != std::string::npos);
    const fs::path cfg = tmp_dir("geomcfg") / "g.json";
    std::ofstream(cfg) << R"({"shell": {"g0": "const:0", "g1": "const:1"}, "eps": [0.1]})";
    const Run v = run("geom --config " + cfg.string(), "geomcfg");
    CHECK(v.code == 0);
    CHECK(v.out.find("1.38648955") != std::string::npos);
    const Run t = run("geom --surface torus --eps 0.1,0.05", "geomtorus");
    CHECK(t.code == 0);
    CHECK(t.out.find("max |kappa| 2") != std::string::npos);
  }
}
