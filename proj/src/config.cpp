#include "thinshell/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thinshell/checks.hpp"
#include "thinshell/errors.hpp"
#include "thinshell/registry.hpp"

namespace thinshell {

namespace {

using nlohmann::json;

const std::set<std::string> kFormats{"json", "csv", "plot"};

void reject_unknown(const json& j, const std::set<std::string>& keys, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError("bad value for '" + key + "': " + ex.what());
  }
}

}  // namespace

std::function<void(ShellConfig&)> ShellSpec::edit() const {
  std::optional<ThicknessFn> f0, f1;
  if (g0) f0 = ThicknessFn::parse(*g0);
  if (g1) f1 = ThicknessFn::parse(*g1);
  const ShellSpec s = *this;
  return [s, f0, f1](ShellConfig& c) {
    if (f0) c.g0 = *f0;
    if (f1) c.g1 = *f1;
    if (s.nu) c.nu = *s.nu;
    if (s.gamma0) c.gamma0 = *s.gamma0;
    if (s.gamma1) c.gamma1 = *s.gamma1;
    if (s.radial_nodes) c.radial_nodes = *s.radial_nodes;
  };
}

std::vector<std::string> RunConfig::selected() const {
  std::vector<std::string> out;
  for (const auto& d : check_registry())
    if (all_checks || std::find(checks.begin(), checks.end(), d.name) != checks.end()) out.push_back(d.name);
  return out;
}

void RunConfig::validate() const {
  make_surface(surface, surface_params);
  if (shell.g0) ThicknessFn::parse(*shell.g0);
  if (shell.g1) ThicknessFn::parse(*shell.g1);
  if (shell.nu && !(*shell.nu > 0.0)) throw ConfigError("nu must be positive");
  if ((shell.gamma0 && *shell.gamma0 < 0.0) || (shell.gamma1 && *shell.gamma1 < 0.0))
    throw ConfigError("friction coefficients must be nonnegative");
  if (shell.radial_nodes && *shell.radial_nodes < 1) throw ConfigError("radial_nodes must be at least 1");
  if (eps.empty()) throw ConfigError("eps list is empty");
  for (double e : eps)
    if (!(e > 0.0)) throw ConfigError("eps values must be positive");
  for (const auto& n : checks)
    if (!find_check(n)) throw ConfigError("unknown check '" + n + "'");
  for (const auto& [c, f] : families) {
    const CheckDef* d = find_check(c);
    if (!d) throw ConfigError("family override for unknown check '" + c + "'");
    validate_override(*d, f);
  }
  for (const auto& f : formats)
    if (!kFormats.count(f)) throw ConfigError("unknown output format '" + f + "'");
  if (refine < 1) throw ConfigError("refine must be at least 1");
  if (members < 1) throw ConfigError("members must be at least 1");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"surface", "shell", "eps", "checks", "families", "out", "formats", "seed", "refine", "members"},
                 "config");
  RunConfig c;
  if (j.contains("surface")) {
    const json& s = j["surface"];
    if (s.is_string()) {
      c.surface = s.get<std::string>();
    } else {
      reject_unknown(s, {"name", "params"}, "surface");
      c.surface = get_as<std::string>(s, "name");
      if (s.contains("params")) c.surface_params = get_as<std::map<std::string, double>>(s, "params");
    }
  }
  if (j.contains("shell")) {
    const json& s = j["shell"];
    reject_unknown(s, {"g0", "g1", "nu", "gamma0", "gamma1", "radial_nodes"}, "shell");
    if (s.contains("g0")) c.shell.g0 = get_as<std::string>(s, "g0");
    if (s.contains("g1")) c.shell.g1 = get_as<std::string>(s, "g1");
    if (s.contains("nu")) c.shell.nu = get_as<double>(s, "nu");
    if (s.contains("gamma0")) c.shell.gamma0 = get_as<double>(s, "gamma0");
    if (s.contains("gamma1")) c.shell.gamma1 = get_as<double>(s, "gamma1");
    if (s.contains("radial_nodes")) c.shell.radial_nodes = get_as<int>(s, "radial_nodes");
  }
  if (j.contains("eps")) c.eps = get_as<std::vector<double>>(j, "eps");
  if (j.contains("checks")) {
    const json& s = j["checks"];
    if (s.is_string() && s.get<std::string>() == "all")
      c.all_checks = true;
    else
      c.checks = get_as<std::vector<std::string>>(j, "checks");
  }
  if (j.contains("families")) c.families = get_as<std::map<std::string, std::string>>(j, "families");
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("formats")) {
    const auto v = get_as<std::vector<std::string>>(j, "formats");
    c.formats = {v.begin(), v.end()};
  }
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("refine")) c.refine = get_as<int>(j, "refine");
  if (j.contains("members")) c.members = get_as<int>(j, "members");
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const RunConfig& c) {
  json j;
  j["surface"] = {{"name", c.surface}, {"params", c.surface_params}};
  json s = json::object();
  if (c.shell.g0) s["g0"] = *c.shell.g0;
  if (c.shell.g1) s["g1"] = *c.shell.g1;
  if (c.shell.nu) s["nu"] = *c.shell.nu;
  if (c.shell.gamma0) s["gamma0"] = *c.shell.gamma0;
  if (c.shell.gamma1) s["gamma1"] = *c.shell.gamma1;
  if (c.shell.radial_nodes) s["radial_nodes"] = *c.shell.radial_nodes;
  j["shell"] = s;
  j["eps"] = c.eps;
  if (c.all_checks)
    j["checks"] = "all";
  else
    j["checks"] = c.checks;
  j["families"] = c.families;
  j["out"] = c.out;
  j["formats"] = std::vector<std::string>(c.formats.begin(), c.formats.end());
  j["seed"] = c.seed;
  j["refine"] = c.refine;
  j["members"] = c.members;
  return j.dump(2);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size()) throw ConfigError("bad eps value '" + t + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace thinshell
