#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace capillary::cli {

// Entry point of the `plates` tool. Exit codes: 0 success, 2 domain error
// (message names the violated precondition), 1 internal numerical failure,
// 64 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capillary::cli
