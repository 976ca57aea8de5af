#include "thinshell/checks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "thinshell/errors.hpp"
#include "thinshell/families.hpp"
#include "thinshell/fit.hpp"

#ifndef THINSHELL_CEILINGS_PATH
#define THINSHELL_CEILINGS_PATH "tests/baselines/ceilings.json"
#endif

namespace thinshell {

namespace {

constexpr double kProbeTol = 0.01;
constexpr double kGrowthLimit = 3.0;

using Edit = std::function<void(ShellConfig&)>;

std::shared_ptr<const ShellContext> make_context(const Surface& S, double eps, int refine, const Edit& base,
                                                 const Edit& edit) {
  ShellConfig cfg = default_shell(S, eps);
  if (base) base(cfg);
  if (edit) edit(cfg);
  if (refine > 1) {
    const auto res = S.default_resolution();
    const int r0 = cfg.resolution[0] > 0 ? cfg.resolution[0] : res[0];
    const int r1 = cfg.resolution[1] > 0 ? cfg.resolution[1] : res[1];
    cfg.resolution = {r0 * refine, r1 * refine};
    cfg.radial_nodes *= refine;
  }
  return global_context_cache().get(S, cfg);
}

// Constants C_k for an upper-bound check and their worst growth toward small eps.
double upper_growth(const std::vector<double>& eps, const std::vector<double>& C) {
  std::vector<size_t> idx(eps.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return eps[a] > eps[b]; });
  double g = 1.0;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b)
      if (C[idx[a]] > 0.0) g = std::max(g, C[idx[b]] / C[idx[a]]);
  return g;
}

}  // namespace

std::string kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Identity:
      return "identity";
    case CheckKind::TwoSided:
      return "two-sided";
    case CheckKind::Upper:
      return "upper";
    case CheckKind::Bounded:
      return "bounded";
  }
  return "?";
}

std::shared_ptr<const ShellContext> CheckEnv::context(double eps,
                                                      const std::function<void(ShellConfig&)>& edit) const {
  return make_context(*S, eps, refine, base, edit);
}

std::shared_ptr<const ShellContext> CheckEnv::sample_context(double eps,
                                                             const std::function<void(ShellConfig&)>& edit) const {
  return make_context(*S, eps, 1, base, edit);
}

CheckEnv CheckEnv::refined(int factor) const {
  CheckEnv e = *this;
  e.refine = refine * factor;
  return e;
}

std::string primary_family(const CheckDef& def) {
  const std::string first = def.family.substr(0, def.family.find('+'));
  if (first == "-" || first.find('|') != std::string::npos) return "";
  return first;
}

void validate_override(const CheckDef& def, const std::string& family) {
  const std::string base = primary_family(def);
  if (base.empty()) throw ConfigError("check '" + def.name + "' does not accept a family override");
  const FamilyInfo& want = family_info(base);
  const FamilyInfo& got = family_info(family);
  constexpr unsigned kKind = kScalar | kVector | kSurface;
  if ((want.tags & kKind) != (got.tags & kKind) || (want.tags & ~got.tags) != 0)
    throw ConfigError("tag mismatch: family '" + family + "' [" + tags_string(got.tags) + "] cannot replace '" + base +
                      "' [" + tags_string(want.tags) + "] in check '" + def.name + "'");
}

CheckResult run_check(const CheckDef& def, const CheckEnv& env_in, const RunOptions& opt) {
  CheckEnv env = env_in;
  env.family_default = primary_family(def);
  if (const auto it = opt.families.find(def.name); it != opt.families.end()) {
    validate_override(def, it->second);
    env.family_override = it->second;
  }
  CheckResult R;
  R.name = def.name;
  R.family = env.family_override.empty() ? def.family : env.family_override;
  R.surface = env.S->name;
  R.kind = kind_name(def.kind);
  R.description = def.description;
  R.expected = def.expected;
  R.threshold = def.tol;

  if (def.applicable) {
    const std::string why = def.applicable(*env.S);
    if (!why.empty()) {
      R.verdict = "skipped";
      R.note = why;
      return R;
    }
  }

  const bool identity = def.kind == CheckKind::Identity;
  R.eps = identity ? std::vector<double>{opt.identity_eps} : opt.eps;
  if (!identity && R.eps.size() < 3) throw ConfigError("scaling check '" + def.name + "' needs at least 3 eps values");
  const int members = def.members > 0 ? def.members : env.members;

  try {
    for (int m = 0; m < members; ++m) {
      MemberSeries s;
      s.member = m;
      for (double e : R.eps) {
        const Sample smp = def.measure(env, e, m);
        s.lhs.push_back(smp.lhs);
        s.rhs.push_back(smp.rhs);
        s.ratio.push_back(smp.ratio());
      }
      R.series.push_back(std::move(s));
    }
  } catch (const UnsupportedConfiguration& ex) {
    R.verdict = "skipped";
    R.note = ex.what();
    return R;
  } catch (const std::exception& ex) {
    R.verdict = "fail";
    R.note = ex.what();
    return R;
  }

  auto take_worst = [&](size_t i) {
    R.lhs = R.series[i].lhs;
    R.rhs = R.series[i].rhs;
  };

  bool ok = true;
  if (identity) {
    size_t worst = 0;
    double wr = -1.0;
    for (size_t i = 0; i < R.series.size(); ++i) {
      double r = std::abs(R.series[i].ratio[0]);
      if (!std::isfinite(r)) r = INFINITY;
      if (r > wr) {
        wr = r;
        worst = i;
      }
    }
    R.residual = wr;
    take_worst(worst);
    R.constant = R.residual;
    ok = std::isfinite(R.residual) && R.residual <= def.tol;
    R.verdict = ok ? "pass" : "fail";
    return R;
  }

  // Scaling checks.
  std::vector<MemberSeries*> live;
  for (auto& s : R.series) {
    const bool zero = std::all_of(s.lhs.begin(), s.lhs.end(), [](double v) { return v == 0.0; });
    if (!zero) live.push_back(&s);
  }
  if (live.empty()) {
    R.vacuous = true;
    take_worst(0);
    R.verdict = "pass (vacuous)";
    R.note = "left-hand side identically zero";
    return R;
  }

  double worst_score = -1e300;
  size_t worst_idx = 0;
  R.slope = def.kind == CheckKind::TwoSided ? 0.0 : 1e300;
  double worst_dev = -1.0;
  for (size_t k = 0; k < live.size(); ++k) {
    MemberSeries& s = *live[k];
    try {
      const Fit f = fit_exponent(R.eps, s.ratio);
      s.slope = f.slope;
      s.residual = f.residual;
    } catch (const std::exception& ex) {
      R.verdict = "fail";
      R.note = std::string("fit failed for member ") + std::to_string(s.member) + ": " + ex.what();
      take_worst(static_cast<size_t>(live[k] - R.series.data()));
      return R;
    }
    R.residual = std::max(R.residual, s.residual);
    double score = 0.0;
    switch (def.kind) {
      case CheckKind::TwoSided: {
        const double dev = std::abs(s.slope - def.expected);
        if (dev > worst_dev) {
          worst_dev = dev;
          R.slope = s.slope;
        }
        score = dev;
        for (size_t i = 0; i < R.eps.size(); ++i)
          R.constant = std::max(R.constant, s.ratio[i] / std::pow(R.eps[i], def.expected));
        break;
      }
      case CheckKind::Upper: {
        std::vector<double> C(R.eps.size());
        for (size_t i = 0; i < C.size(); ++i) C[i] = s.ratio[i] / std::pow(R.eps[i], def.expected);
        R.constant = std::max(R.constant, *std::max_element(C.begin(), C.end()));
        R.growth = std::max(R.growth, upper_growth(R.eps, C));
        R.slope = std::min(R.slope, s.slope);
        score = -s.slope;
        break;
      }
      case CheckKind::Bounded: {
        const auto [mn, mx] = std::minmax_element(s.ratio.begin(), s.ratio.end());
        const double var = *mn > 0.0 ? *mx / *mn : INFINITY;
        R.growth = std::max(R.growth, var);
        R.constant = std::max(R.constant, *mx);
        if (std::abs(s.slope) > std::abs(R.slope) || R.slope == 1e300) R.slope = s.slope;
        score = var;
        break;
      }
      case CheckKind::Identity:
        break;
    }
    if (score > worst_score) {
      worst_score = score;
      worst_idx = static_cast<size_t>(live[k] - R.series.data());
    }
  }
  take_worst(worst_idx);

  switch (def.kind) {
    case CheckKind::TwoSided:
      ok = worst_dev <= def.tol;
      break;
    case CheckKind::Upper:
      ok = R.slope >= def.expected - def.tol && R.growth <= kGrowthLimit;
      break;
    case CheckKind::Bounded: {
      ok = R.growth < kGrowthLimit;
      const auto it = opt.ceilings.find(R.surface + "/" + R.name);
      if (def.fixed_ceiling > 0.0) {
        R.ceiling = def.fixed_ceiling;
        ok = ok && R.constant <= R.ceiling;
      } else if (it != opt.ceilings.end()) {
        R.ceiling = it->second;
        ok = ok && R.constant <= R.ceiling;
      } else {
        R.note = "no recorded ceiling";
      }
      break;
    }
    case CheckKind::Identity:
      break;
  }
  R.verdict = ok ? "pass" : "fail";

  if (opt.probe && !def.pointwise) {
    size_t i0 = 0;
    for (size_t i = 1; i < R.eps.size(); ++i)
      if (R.eps[i] > R.eps[i0]) i0 = i;
    const double base = R.series[0].ratio[i0];
    try {
      const double fine = def.measure(env.refined(2), R.eps[i0], 0).ratio();
      const double scale = std::max(std::abs(base), 1e-300);
      R.probe_change = std::abs(fine - base) / scale;
      if (R.probe_change > kProbeTol) {
        R.verdict = "inconclusive";
        R.note = "quadrature under-resolved: value changed by more than 1% under 2x refinement";
      }
    } catch (const std::exception& ex) {
      R.note = std::string("refinement probe failed: ") + ex.what();
    }
  }
  return R;
}

std::map<std::string, double> load_ceilings(const std::string& path) {
  std::map<std::string, double> out;
  std::ifstream in(path);
  if (!in) return out;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ConfigError("cannot parse ceilings file '" + path + "': " + ex.what());
  }
  if (!j.is_object()) throw ConfigError("ceilings file '" + path + "' must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number()) throw ConfigError("ceiling '" + it.key() + "' is not a number");
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

std::string default_ceilings_path() { return THINSHELL_CEILINGS_PATH; }

}  // namespace thinshell
