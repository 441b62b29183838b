#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbsim::cli {

// Exit codes: 0 success, 1 domain error (verification failure, forfeit-only
// batch), 2 usage error. Results go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbsim::cli
