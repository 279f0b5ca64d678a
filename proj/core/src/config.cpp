#include "desanon/config.hpp"

#include <numeric>
#include <string>

#include "desanon/errors.hpp"
#include "desanon/feasibility.hpp"

namespace desanon {

void validate_config(const Config& cfg) {
  if (cfg.n < 2) throw ConfigError("need at least two processes (n >= 2)");
  if (cfg.m < 1) throw ConfigError("need at least one register (m >= 1)");
  if (cfg.enforce_feasibility && !is_in_M(cfg.n, cfg.m)) {
    std::string why;
    for (std::uint64_t l = 2; l <= cfg.n; ++l) {
      if (std::gcd(l, static_cast<std::uint64_t>(cfg.m)) != 1) {
        why = "gcd(" + std::to_string(l) + "," + std::to_string(cfg.m) + ") = " +
              std::to_string(std::gcd(l, static_cast<std::uint64_t>(cfg.m)));
        break;
      }
    }
    if (why.empty()) why = "m = 1 is excluded";
    throw ConfigError("m = " + std::to_string(cfg.m) + " is not in M(" +
                      std::to_string(cfg.n) +
                      "): need gcd(l,m) = 1 for every l in 2..n, but " + why +
                      " (pass --allow-infeasible to override)");
  }
}

std::uint64_t effective_budget(const Config& cfg) {
  if (cfg.step_budget != 0) return cfg.step_budget;
  return std::uint64_t{2000} * cfg.n * cfg.m;
}

}  // namespace desanon
