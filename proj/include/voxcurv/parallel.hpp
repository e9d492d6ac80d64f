#pragma once

#include <cstdint>
#include <functional>

namespace voxcurv {

/// Resolves a worker count: a positive request wins, otherwise the
/// VOXCURV_THREADS environment variable, otherwise the hardware concurrency.
/// Always returns at least 1.
int resolve_thread_count(int requested);

/// Number of chunks parallel_chunks() will use for n items on `threads`
/// workers: min(threads, n), at least 1 for n > 0.
int chunk_count(std::int64_t n, int threads);

/// Runs fn(chunk, begin, end) over a partition of [0, n) into contiguous
/// chunks, one worker thread per chunk (inline when there is a single chunk).
///
/// Callers that merge per-chunk results in chunk order stay deterministic for
/// any thread count as long as the merged quantities are exact under
/// regrouping (integer sums, ordered appends).
void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

} // namespace voxcurv
