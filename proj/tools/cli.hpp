#pragma once

namespace cyclelab::cli {

/// Exit codes: 0 success or passing verification, 1 computational or verification failure,
/// 2 usage error.
int run(int argc, char** argv);

}  // namespace cyclelab::cli
