#pragma once

#include <iosfwd>

namespace enkcf {

/// Entry point of the enkcf command: `track`, `eval` and `config-dump`.
/// Regular output goes to `out`, progress and errors to `err`. Returns the
/// process exit status: 0 only when every requested sequence completed.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enkcf
