#pragma once

#include <cstddef>
#include <functional>

namespace symgen {

/// Runs body(k) for k in [0, count) on up to `threads` workers. Callers write
/// results to per-index slots so the outcome never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, std::function<void(std::size_t)> const &body);

} // namespace symgen
