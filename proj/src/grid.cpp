#include "exciton/grid.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace exciton {

int default_workers() {
  if (const char* env = std::getenv("EXCITON_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (...) {
      // fall through to hardware count
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace exciton
