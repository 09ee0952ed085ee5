#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meshkit {

// Dispatches one CLI invocation. Returns the process exit code: 0 success,
// 1 domain error, 2 parse/usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace meshkit
