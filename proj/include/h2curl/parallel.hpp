#pragma once

#include <cstddef>
#include <functional>

namespace h2curl {

/// Worker count for parallel_for. Defaults to $H2CURL_THREADS, else 1.
int thread_count();
void set_thread_count(int n);

/// $H2CURL_THREADS if set to a positive integer, else 1.
int thread_count_from_env();

/// Runs body(i) for i in [0, n) on contiguous static blocks. Callers write
/// results per index, so output does not depend on the thread count. The
/// exception of the lowest failing block is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace h2curl
