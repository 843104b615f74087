#pragma once

#include <cstddef>
#include <functional>

namespace ddm {

// Worker cap for parallel_for (default: hardware concurrency).
std::size_t max_threads();
void set_max_threads(std::size_t k);

// Runs body over contiguous index blocks [begin,end) covering [0,count).
// Bodies must write only to disjoint slots; the block split is a pure
// function of (count, worker cap), so output never depends on scheduling.
// Runs inline when count < grain or one worker is available.
void parallel_for(std::size_t count, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ddm
