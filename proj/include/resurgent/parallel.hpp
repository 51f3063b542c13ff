#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace resurgent {

// Worker-thread cap; RESURGENT_THREADS overrides the hardware default.
inline unsigned worker_count() {
  if (const char* env = std::getenv("RESURGENT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace resurgent
