#pragma once

#include <functional>

namespace dwelltour {

/// Worker cap: min(hardware threads, DWELLTOUR_THREADS when set). At least 1.
int thread_cap();

/// Runs fn(i) for i in [0, count) across up to thread_cap() workers.
/// Blocks until done; fn must be safe to call concurrently for distinct i.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace dwelltour
