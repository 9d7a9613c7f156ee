#ifndef QPROJ_CLI_HPP
#define QPROJ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qproj {

/// Command dispatch for the qproj tool. `args` excludes the program name.
/// Exit codes: 0 success, 1 parse/usage error, 2 out-of-catalog element
/// (limitset/verify), 3 verification containment below threshold, 4 numeric
/// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qproj

#endif
