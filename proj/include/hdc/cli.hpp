#pragma once

namespace hdc {

// Full command-line front end; returns the process exit code.
// 0 success, 2 usage error, 3 runtime/numeric error, 4 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace hdc
