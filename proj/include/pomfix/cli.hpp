#pragma once

// Batch front-end shared by the `pomfix` tool and the tests.
//
// Exit codes: 0 certified / passed / not falsified, 1 hypothesis violated,
// counterexample found or certificate refused (artifacts still written),
// 2 configuration or usage error.

#include <ostream>
#include <string>
#include <vector>

namespace pomfix::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_config = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pomfix::cli
