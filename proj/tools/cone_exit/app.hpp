#pragma once

#include <ostream>

namespace cone_exit::cli {

/// Parses arguments, runs the selected command and writes its report. Returns the exit status:
/// 0 success, 1 usage or configuration error, 2 cross-check failure, 3 unconverged numerics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cone_exit::cli
