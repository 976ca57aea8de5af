#include "thinshell/suite.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "thinshell/errors.hpp"
#include "thinshell/registry.hpp"

namespace thinshell {

int thread_count() {
  if (const char* s = std::getenv("THINSHELL_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& names, const CheckEnv& env,
                                   const RunOptions& opt, int threads) {
  std::vector<const CheckDef*> defs;
  for (const auto& n : names) {
    const CheckDef* d = find_check(n);
    if (!d) throw ConfigError("unknown check '" + n + "'");
    defs.push_back(d);
  }
  std::vector<CheckResult> out(defs.size());
  std::vector<std::exception_ptr> errors(defs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < defs.size(); i = next++) {
      try {
        out[i] = run_check(*defs[i], env, opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(defs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace thinshell
