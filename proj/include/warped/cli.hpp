#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace warped {

// Command-line front end. Exit codes: 0 success, 1 check failure (a
// report boolean is false or a golden diff fails), 2 usage error,
// 3 numerical failure. Diagnostics go to err, data to out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace warped
