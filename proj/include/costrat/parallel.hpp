#pragma once

#include <cstddef>
#include <functional>

namespace costrat {

/// Worker count used by parallel_for. Defaults to the hardware concurrency.
int thread_count();
/// Values below 1 select the hardware concurrency.
void set_thread_count(int n);

/// Calls body(i) for i in [0, n). Work is distributed dynamically, so body
/// must write only to slots owned by i. Nested calls run serially. If any
/// call throws, the exception from the smallest failing i is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace costrat
