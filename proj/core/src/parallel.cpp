#include "ids/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ids {

unsigned default_workers() {
  if (const char* env = std::getenv("IDS_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ids
