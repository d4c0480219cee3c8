#include "bbd/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

namespace bbd {

bool parallel_enabled() noexcept {
  const char* flag = std::getenv("BBD_NO_PARALLEL");
  return flag == nullptr || std::string_view(flag) != "1";
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = parallel_enabled() ? std::min(hw, n) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // Rethrow the error from the lowest block, as a sequential run would.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bbd
