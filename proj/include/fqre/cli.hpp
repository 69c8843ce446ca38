#pragma once

namespace fqre {

/// Entry point of the command-line front end. Returns the process exit code:
/// 0 on success, 1 when a requested computation is infeasible, 2 on usage
/// errors (bad flags, unknown fixtures or files).
int run_cli(int argc, const char* const* argv);

}  // namespace fqre
