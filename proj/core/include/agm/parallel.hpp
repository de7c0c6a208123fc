#pragma once

#include <cstddef>
#include <functional>

namespace agm {

/// Global cap on worker threads used inside the library. 0 means "use the
/// hardware concurrency". Defaults to 1.
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
/// chunks. Chunk boundaries depend only on `chunk_size`, never on the thread
/// count, so per-chunk partial results can be combined deterministically.
void parallel_chunks(std::size_t count, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk_size) {
  return (count + chunk_size - 1) / chunk_size;
}

}  // namespace agm
