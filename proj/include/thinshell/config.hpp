#pragma once

// Run configuration: a single JSON document, overridable by CLI flags.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <functional>

#include "thinshell/shell.hpp"

namespace thinshell {

struct ShellSpec {
  std::optional<std::string> g0, g1;  // thickness presets; unset keeps the surface default
  std::optional<double> nu, gamma0, gamma1;
  std::optional<int> radial_nodes;

  // Edit applied on top of default_shell.
  std::function<void(ShellConfig&)> edit() const;
  bool operator==(const ShellSpec&) const = default;
};

struct RunConfig {
  std::string surface = "sphere";
  std::map<std::string, double> surface_params;
  ShellSpec shell;
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  bool all_checks = false;
  std::vector<std::string> checks;
  std::map<std::string, std::string> families;  // check -> family override
  std::string out = "results";
  std::set<std::string> formats{"json", "csv"};
  std::uint64_t seed = 1;
  int refine = 1;
  int members = 3;

  bool operator==(const RunConfig&) const = default;

  // Selected check names in registry order.
  std::vector<std::string> selected() const;
  // Throws ConfigError on unknown checks, families, formats, thickness specs or bad values.
  void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string to_json(const RunConfig& cfg);

// "a,b,c" helpers used by the CLI.
std::vector<std::string> split_list(const std::string& s);
std::vector<double> parse_eps_list(const std::string& s);

}  // namespace thinshell
