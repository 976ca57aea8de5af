#pragma once

// Concurrent execution of registry checks.

#include <string>
#include <vector>

#include "thinshell/checks.hpp"

namespace thinshell {

// THINSHELL_THREADS if set and positive, else the hardware concurrency.
int thread_count();

// Runs the named checks on a worker pool; results come back in input order.
std::vector<CheckResult> run_suite(const std::vector<std::string>& names, const CheckEnv& env,
                                   const RunOptions& opt, int threads = thread_count());

}  // namespace thinshell
