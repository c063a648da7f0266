#pragma once

#include <cstddef>
#include <functional>

namespace mxm {

/// Number of worker threads used by grid loops (>= 1). Defaults to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs task(i) for i in [0, count). Tasks may run concurrently; each task
/// must write to disjoint outputs.
void parallel_tasks(std::size_t count, const std::function<void(std::size_t)>& task);

/// Splits [0, n) into fixed chunks of `grain` and runs body(begin, end) on
/// each. Chunk boundaries depend only on n and grain, never on the thread
/// count.
void parallel_range(std::size_t n, std::size_t grain,
                    const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of body(begin, end) over fixed chunks, combined in chunk order.
/// Bit-identical for any thread count.
double reduce_sum(std::size_t n, std::size_t grain,
                  const std::function<double(std::size_t, std::size_t)>& body);

inline constexpr std::size_t kDefaultGrain = 4096;

}  // namespace mxm
