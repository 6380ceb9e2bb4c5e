#pragma once

#include <cstddef>
#include <functional>

namespace assoc {

// Runs fn(i) for i in [0, count) across `threads` workers with a static
// block partition. Results must be written to per-index slots; with that
// discipline the outcome is identical for any thread count, which is what the
// determinism contract of the toolkit relies on. threads <= 0 picks
// hardware_concurrency. The first exception (by index order) is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

int effective_threads(int threads);

}  // namespace assoc
