#pragma once

// Check definitions, the sweep engine and verdict rules.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thinshell/shell.hpp"

namespace thinshell {

enum class CheckKind {
  Identity,  // residual <= tol at a fixed eps
  TwoSided,  // |slope - expected| <= tol
  Upper,     // slope >= expected - tol, constant growth <= 3
  Bounded,   // ratio varies < 3x over the sweep and stays under a ceiling
};

std::string kind_name(CheckKind k);

// Everything a measurement needs: the surface, run options and context factory.
struct CheckEnv {
  const Surface* S = nullptr;
  std::uint64_t seed = 1;
  int refine = 1;   // quadrature multiplier (surface axes and radial nodes)
  int members = 3;  // family members per check
  std::function<void(ShellConfig&)> base;       // applied to the default shell before check edits
  std::string family_default, family_override;  // override replaces the check's primary family

  // Default shell at eps with optional edits, at the env's refinement.
  std::shared_ptr<const ShellContext> context(double eps, const std::function<void(ShellConfig&)>& edit = {}) const;
  // Same with refinement fixed to 1 (pointwise checks sample fixed nodes).
  std::shared_ptr<const ShellContext> sample_context(double eps,
                                                     const std::function<void(ShellConfig&)>& edit = {}) const;
  CheckEnv refined(int factor) const;
};

// One measurement: lhs and rhs, ratio = lhs / rhs.
struct Sample {
  double lhs = 0.0;
  double rhs = 1.0;
  double ratio() const { return rhs != 0.0 ? lhs / rhs : 0.0; }
};

using MeasureFn = std::function<Sample(const CheckEnv& env, double eps, int member)>;
// Returns an empty string when the check applies to the surface, else the reason to skip.
using ApplicableFn = std::function<std::string(const Surface& S)>;

struct CheckDef {
  std::string name;
  std::string family;  // family name or "-" for geometry-only checks
  std::string description;
  CheckKind kind = CheckKind::Identity;
  double expected = 0.0;  // exponent (scaling checks)
  double tol = 0.0;       // identity tolerance or slope window
  int members = -1;       // -1: use env.members
  bool pointwise = false; // no quadrature involved; refinement does not apply
  double fixed_ceiling = 0.0;  // explicit constant for bounded checks, overrides baselines
  ApplicableFn applicable;
  MeasureFn measure;
};

struct MemberSeries {
  int member = 0;
  std::vector<double> lhs, rhs, ratio;
  double slope = 0.0, residual = 0.0;
};

struct CheckResult {
  std::string name, family, surface, kind, description;
  std::vector<double> eps;
  std::vector<double> lhs, rhs;  // worst member
  std::vector<MemberSeries> series;
  double expected = 0.0;
  double slope = 0.0;     // worst member slope (scaling checks)
  double residual = 0.0;  // identity residual or worst fit residual
  double constant = 0.0;  // max measured constant
  double growth = 0.0;    // max/min (bounded) or max later/earlier (upper) of constants
  double threshold = 0.0;
  double ceiling = 0.0;   // bounded checks, 0 when no baseline
  double probe_change = 0.0;
  bool vacuous = false;
  std::string verdict;    // pass, fail, inconclusive, skipped, pass (vacuous)
  std::string note;
};

struct RunOptions {
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  double identity_eps = 0.05;
  bool probe = true;
  std::map<std::string, double> ceilings;  // "surface/check" -> ceiling
  std::map<std::string, std::string> families;  // check -> family override
};

// Family used for the check's first field; empty when the check takes none
// or offers alternatives ("a|b").
std::string primary_family(const CheckDef& def);
// Throws ConfigError unless `family` can stand in for the check's primary family:
// same field kind and a superset of its constraint tags.
void validate_override(const CheckDef& def, const std::string& family);

CheckResult run_check(const CheckDef& def, const CheckEnv& env, const RunOptions& opt);

// Ceilings file: JSON object {"surface/check": value}.
std::map<std::string, double> load_ceilings(const std::string& path);
std::string default_ceilings_path();

}  // namespace thinshell
