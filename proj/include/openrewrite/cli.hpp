#pragma once

// The command-line front end.

#include <iosfwd>

namespace openrewrite {

/// Exit codes: 0 success or pass, 1 domain or usage error, 2 check failure,
/// 3 a reachability question answered "unknown" or "unreachable".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace openrewrite
