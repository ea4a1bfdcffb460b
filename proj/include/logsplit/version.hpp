#pragma once

#include <string>

namespace logsplit {

// "0.1.0+<git describe>" when built inside a git checkout, "0.1.0" otherwise.
std::string version();

} // namespace logsplit
