#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace gcnlab {

/// Worker count: GCNLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Overrides the worker count for this process (0 restores the default).
void set_thread_count(std::size_t n);

/// Evaluates fn(c) for c in [0, chunks) on up to thread_count() workers and
/// returns the results indexed by chunk. The output does not depend on the
/// number of workers.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::size_t chunks, Fn&& fn) {
  std::vector<Result> out(chunks);
  const std::size_t workers = std::min(thread_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) out[c] = fn(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        out[c] = fn(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Compensated running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> values);

}  // namespace gcnlab
