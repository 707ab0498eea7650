#include "gcnlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gcnlab {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t thread_count() {
  if (const auto n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("GCNLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_thread_count(std::size_t n) { g_override = n; }

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace gcnlab
