#include <schcalc/parallel.hpp>

#include <string>

namespace schcalc {

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("SCHCALC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) hw = static_cast<int>(std::min<long>(hw, cap));
  }
  return hw;
}

}  // namespace schcalc
