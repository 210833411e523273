#pragma once

#include <cstddef>
#include <functional>

namespace kinsl {

/// Worker cap used by parallel_for. 1 means run inline.
void set_thread_count(int n);
int thread_count();

/// Calls body(i) for i in [0, n), split in contiguous chunks across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kinsl
