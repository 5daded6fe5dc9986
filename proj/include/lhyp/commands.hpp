#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lhyp {

// exit codes
constexpr int kClean = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

// Full command line, argv[0] included. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lhyp
