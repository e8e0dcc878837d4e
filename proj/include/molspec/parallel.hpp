#pragma once

#include <cstddef>
#include <functional>

namespace molspec {

// Upper bound on worker threads used by grid loops; 1 means run inline.
void set_max_jobs(unsigned jobs);
unsigned max_jobs();

// Calls fn(i) for i in [0, n). Work is split into contiguous chunks; each
// index writes its own output slot, so results do not depend on the job count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace molspec
