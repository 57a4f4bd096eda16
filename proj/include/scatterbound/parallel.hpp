#pragma once

//! Deterministic data-parallel helper: workers write disjoint index ranges,
//! reductions happen afterwards in a fixed order, so results are identical
//! for any thread count.  SCATTERBOUND_THREADS overrides the worker count.

#include <cstddef>
#include <functional>

namespace scatterbound {

int worker_count();

//! Invokes fn(begin, end) over a partition of [0, n).  fn must only touch
//! per-index state inside its range.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace scatterbound
