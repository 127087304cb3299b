#pragma once

#include <cstddef>
#include <functional>

namespace kinetic {

// Worker count: KINETIC_THREADS env override, else hardware concurrency.
int max_threads();

int chunk_count(std::size_t n);

// Runs body over chunked index ranges [begin, end). Chunk boundaries depend
// only on n, never on the worker count, and the serial path walks the same
// chunks, so per-chunk reductions combined in chunk order give results
// independent of threading.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Same, with the chunk index exposed for reduction slots.
void parallel_for_chunked(std::size_t n,
                          const std::function<void(int, std::size_t, std::size_t)>& body);

}  // namespace kinetic
