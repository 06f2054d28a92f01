#pragma once

#include <iosfwd>

namespace hklab::cli {

// Exit codes: 0 success, 2 usage, 3 numerical failure (report still written), 4 bad input.
enum Exit : int { ok = 0, usage = 2, numerical = 3, invalid_input = 4 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hklab::cli
