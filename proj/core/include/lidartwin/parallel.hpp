#pragma once

#include <cstddef>
#include <functional>

namespace lidartwin {

// Global worker cap (the CLI's --threads). 0 means hardware concurrency.
void set_thread_cap(unsigned n);
unsigned thread_cap();

// Runs fn(i) for i in [0, n). Workers stride over disjoint index blocks and
// must only write to per-index slots; callers do any reduction sequentially
// afterwards, which keeps results identical to a serial run.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lidartwin
