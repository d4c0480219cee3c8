#pragma once

#include <cstddef>
#include <functional>

namespace bbd {

/// False when the environment sets BBD_NO_PARALLEL=1.
bool parallel_enabled() noexcept;

/// Calls body(i) for every i in [0, n), split into contiguous blocks across
/// hardware threads when parallel_enabled(). body must only write state owned
/// by index i; callers reduce afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bbd
