#pragma once

#include <iosfwd>

namespace repvar {

// Exit codes: 0 success/PASS, 1 FAIL certificate, 2 usage error, 3 numeric
// failure.
int cli_run(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace repvar
