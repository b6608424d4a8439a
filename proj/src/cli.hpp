#pragma once

namespace randnet {

/// Entry point of the experiment runner. Returns 0 on success, 1 on usage
/// errors, 2 on numerical failures.
int cli_main(int argc, const char* const* argv);

}  // namespace randnet
