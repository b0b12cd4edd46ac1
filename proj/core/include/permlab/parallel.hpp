#pragma once

#include <cstddef>
#include <functional>

namespace permlab {

/// Runs body(i) for i in [0, count) on up to `threads` worker threads.
///
/// Work items are claimed from a shared atomic counter, so the schedule is
/// nondeterministic -- callers must make each item's result independent of
/// execution order (write to a slot indexed by i, reduce afterwards in index
/// order). The first exception thrown by any item is rethrown to the caller
/// after all workers have stopped.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Hardware thread count with a floor of 1.
unsigned hardware_threads();

}  // namespace permlab
