#pragma once

#include <iosfwd>

namespace mw {

// Exit codes: 0 success, 2 conditional rank verdict, 1 any error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color_allowed = false);

}  // namespace mw
