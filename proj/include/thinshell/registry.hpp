#pragma once

// Named checks of identities and eps-scaling inequalities.

#include <string>
#include <vector>

#include "thinshell/checks.hpp"

namespace thinshell {

const std::vector<CheckDef>& check_registry();
// nullptr when unknown.
const CheckDef* find_check(const std::string& name);
std::vector<std::string> check_names();

}  // namespace thinshell
