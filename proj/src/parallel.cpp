#include "molspec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace molspec {

namespace {
std::atomic<unsigned> g_max_jobs{1};
}

void set_max_jobs(unsigned jobs) { g_max_jobs = std::max(1u, jobs); }
unsigned max_jobs() { return g_max_jobs; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t jobs = std::min<std::size_t>(g_max_jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    const std::size_t lo = n * j / jobs, hi = n * (j + 1) / jobs;
    workers.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace molspec
