#pragma once

#include <cstddef>
#include <functional>

namespace synsal {

/// Number of workers to use when `requested` is 0 (hardware concurrency).
int resolve_workers(int requested);

/// Run fn(i) for i in [0,n). With workers <= 1 this is a plain loop; otherwise
/// indices are split into contiguous ranges across threads. Each index writes
/// only its own outputs, so results are independent of the worker count;
/// callers that reduce must do so in index order afterwards.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// As parallel_for, but also passes the executing worker slot in
/// [0, resolve_workers(workers)), for callers that keep per-worker scratch
/// state. A slot is never used by two threads at once.
void parallel_for_slots(std::size_t n, int workers,
                        const std::function<void(std::size_t worker, std::size_t i)>& fn);

}  // namespace synsal
