#include "symgen/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace symgen {

void parallel_for(std::size_t count, unsigned threads, std::function<void(std::size_t)> const &body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k)
      body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::size_t const chunk = std::max<std::size_t>(1, count / (8 * threads));
  auto worker = [&] {
    for (;;) {
      std::size_t const start = next.fetch_add(chunk);
      if (start >= count)
        return;
      std::size_t const stop = std::min(count, start + chunk);
      for (std::size_t k = start; k < stop; ++k)
        body(k);
    }
  };
  std::vector<std::thread> pool;
  unsigned const spawn = static_cast<unsigned>(std::min<std::size_t>(threads, count)) - 1;
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
}

} // namespace symgen
