#ifndef TERMDATA_WORKERS_HPP
#define TERMDATA_WORKERS_HPP

#include <cstddef>
#include <functional>

namespace termdata {

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n and chunk_size, never on the worker
// count, so callers that store per-chunk results and merge them in chunk
// order get bit-identical output for any number of workers.
void for_each_chunk(std::size_t n, std::size_t chunk_size, unsigned workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t chunk_count(std::size_t n, std::size_t chunk_size);

}  // namespace termdata

#endif  // TERMDATA_WORKERS_HPP
