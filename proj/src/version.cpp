#include "logsplit/version.hpp"

namespace logsplit {

std::string version() {
#ifdef LOGSPLIT_GIT_DESCRIBE
  return std::string("0.1.0+") + LOGSPLIT_GIT_DESCRIBE;
#else
  return "0.1.0";
#endif
}

} // namespace logsplit
