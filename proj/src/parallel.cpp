#include "meemi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace meemi {

std::size_t worker_count() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("MEEMI_THREADS")) {
    try {
      requested = std::stoul(env);
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested == 0) requested = std::thread::hardware_concurrency();
  return std::max<std::size_t>(1, requested);
}

}  // namespace meemi
