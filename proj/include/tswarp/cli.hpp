#pragma once

namespace tswarp {

/// Entry point of the `tswarp` tool.  Returns 0 on success, 1 on a usage
/// error and 2 on a data error.
int cli_dispatch(int argc, char** argv);

}  // namespace tswarp
