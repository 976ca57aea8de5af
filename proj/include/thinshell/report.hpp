#pragma once

// JSON, CSV and SVG output for check results.

#include <string>
#include <vector>

#include "thinshell/checks.hpp"

namespace thinshell {

// %.17g; non-finite values become null (JSON) or empty (CSV).
std::string fmt17(double v);

std::string results_json(const std::vector<CheckResult>& results);
// name,family,eps_min,eps_max,slope,residual,constant,verdict
std::string results_csv(const std::vector<CheckResult>& results);
// member,eps,lhs,rhs,ratio per sample.
std::string series_csv(const CheckResult& r);
// log eps vs log ratio per member with the fitted line of the worst member.
std::string plot_svg(const CheckResult& r);

// 0 all pass (skips and vacuous passes included), 1 any fail, 3 any inconclusive.
int exit_code(const std::vector<CheckResult>& results);

}  // namespace thinshell
