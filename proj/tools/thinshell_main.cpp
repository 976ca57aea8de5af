#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thinshell/config.hpp"
#include "thinshell/errors.hpp"
#include "thinshell/registry.hpp"
#include "thinshell/report.hpp"
#include "thinshell/suite.hpp"

namespace fs = std::filesystem;
using namespace thinshell;

namespace {

constexpr int kExitUsage = 2;

struct Flags {
  std::string config, surface, eps, only, out, format, ceilings;
  bool all = false;
  std::uint64_t seed = 1;
  int refine = 1;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--surface", f.surface, "sphere, perturbed_sphere or torus");
  cmd->add_option("--eps", f.eps, "comma-separated eps list");
  cmd->add_option("--only", f.only, "comma-separated check names");
  cmd->add_flag("--all", f.all, "select every registered check");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--format", f.format, "comma-separated subset of json,csv,plot");
  cmd->add_option("--seed", f.seed, "family seed");
  cmd->add_option("--refine", f.refine, "quadrature refinement factor");
  cmd->add_option("--ceilings", f.ceilings, "ceilings file for bounded checks");
}

RunConfig build_config(CLI::App* cmd, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (cmd->count("--surface")) {
    if (f.surface != c.surface) c.surface_params.clear();
    c.surface = f.surface;
  }
  if (cmd->count("--eps")) c.eps = parse_eps_list(f.eps);
  if (cmd->count("--only")) {
    c.checks = split_list(f.only);
    c.all_checks = false;
  }
  if (f.all) c.all_checks = true;
  if (cmd->count("--out")) c.out = f.out;
  if (cmd->count("--format")) {
    const auto v = split_list(f.format);
    c.formats = {v.begin(), v.end()};
  }
  if (cmd->count("--seed")) c.seed = f.seed;
  if (cmd->count("--refine")) c.refine = f.refine;
  c.validate();
  return c;
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream o(p, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + p.string());
  o << text;
}

int cmd_geom(const RunConfig& c) {
  const auto S = make_surface(c.surface, c.surface_params);
  std::printf("surface %s, max |kappa| %.10g, tubular radius %.10g\n", S->name.c_str(), S->max_abs_kappa, S->delta);

  const ShellContext base(*S, [&] {
    ShellConfig sc = default_shell(*S, c.eps.front());
    c.shell.edit()(sc);
    return sc;
  }());
  const auto& cols = base.columns();
  double k1[2] = {INFINITY, -INFINITY}, k2[2] = {INFINITY, -INFINITY}, h[2] = {INFINITY, -INFINITY};
  double area = 0.0;
  for (const auto& col : cols) {
    const GeometryPack g = geometry_pack(col);
    k1[0] = std::min(k1[0], g.kappa1);
    k1[1] = std::max(k1[1], g.kappa1);
    k2[0] = std::min(k2[0], g.kappa2);
    k2[1] = std::max(k2[1], g.kappa2);
    h[0] = std::min(h[0], g.H);
    h[1] = std::max(h[1], g.H);
    area += col.area_weight;
  }
  std::printf("%zu surface nodes, area %.12g\n", cols.size(), area);
  std::printf("kappa1 in [%.10g, %.10g]\nkappa2 in [%.10g, %.10g]\nH in [%.10g, %.10g]\n", k1[0], k1[1], k2[0], k2[1],
              h[0], h[1]);

  std::printf("\nsample nodes:\n%8s %12s %12s %12s %12s %12s %12s %12s %12s %12s\n", "node", "y1", "y2", "y3", "n1",
              "n2", "n3", "kappa1", "kappa2", "H");
  const size_t stride = cols.size() / 8 + 1;  // off the grid period so samples spread over both angles
  for (size_t k = 0; k < cols.size(); k += stride) {
    const GeometryPack g = geometry_pack(cols[k]);
    std::printf("%8zu %12.8f %12.8f %12.8f %12.8f %12.8f %12.8f %12.8f %12.8f %12.8f\n", k, g.y[0], g.y[1], g.y[2],
                g.n[0], g.n[1], g.n[2], g.kappa1, g.kappa2, g.H);
  }

  std::printf("\n%10s %14s %14s %18s\n", "eps", "min J", "max J", "shell volume");
  for (double e : c.eps) {
    ShellConfig sc = default_shell(*S, e);
    c.shell.edit()(sc);
    const auto ctx = global_context_cache().get(*S, sc);
    double jmin = INFINITY, jmax = -INFINITY;
    for (const auto& col : ctx->columns())
      for (const auto& p : col.pts) {
        jmin = std::min(jmin, p.J);
        jmax = std::max(jmax, p.J);
      }
    std::printf("%10.6g %14.10f %14.10f %18.10f\n", e, jmin, jmax, shell_volume(*ctx));
  }
  return 0;
}

int run_checks(const RunConfig& c, const std::string& ceilings, bool sweep) {
  const auto names = c.selected();
  if (names.empty()) {
    std::cerr << "error: no checks selected (use --only NAMES or --all)\n";
    return kExitUsage;
  }
  if (sweep && c.eps.size() < 3) {
    std::cerr << "error: a sweep needs at least 3 eps values\n";
    return kExitUsage;
  }
  const auto S = make_surface(c.surface, c.surface_params);
  CheckEnv env;
  env.S = S.get();
  env.seed = c.seed;
  env.refine = c.refine;
  env.members = c.members;
  env.base = c.shell.edit();
  RunOptions opt;
  opt.eps = c.eps;
  opt.families = c.families;
  opt.ceilings = load_ceilings(ceilings.empty() ? default_ceilings_path() : ceilings);

  const auto results = run_suite(names, env, opt);

  const fs::path out(c.out);
  if (c.formats.count("json")) write_file(out / "results.json", results_json(results));
  if (c.formats.count("csv")) write_file(out / "results.csv", results_csv(results));
  for (const auto& r : results) {
    if (sweep) write_file(out / "tables" / (r.name + ".csv"), series_csv(r));
    if (sweep || c.formats.count("plot")) write_file(out / "plots" / (r.name + ".svg"), plot_svg(r));
  }

  for (const auto& r : results) {
    std::printf("%-24s %-10s slope %9.4f  constant %11.4e  %s", r.name.c_str(), r.kind.c_str(), r.slope, r.constant,
                r.verdict.c_str());
    if (!r.note.empty()) std::printf("  (%s)", r.note.c_str());
    std::printf("\n");
  }
  const int code = exit_code(results);
  std::printf("%zu checks, exit %d, output in %s\n", results.size(), code, out.string().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-shell geometry and inequality checks"};
  app.require_subcommand(1);
  Flags fg, fc, fs_;
  auto* geom = app.add_subcommand("geom", "report surface and shell geometry");
  auto* check = app.add_subcommand("check", "run selected checks");
  auto* sweep = app.add_subcommand("sweep", "run checks over an eps sweep and write tables and plots");
  add_flags(geom, fg);
  add_flags(check, fc);
  add_flags(sweep, fs_);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*geom) return cmd_geom(build_config(geom, fg));
    if (*check) return run_checks(build_config(check, fc), fc.ceilings, false);
    return run_checks(build_config(sweep, fs_), fs_.ceilings, true);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
