#pragma once

// Thin wrapper around the OpenMP loops used by the batch kernels. Each kernel
// also has a serial reference twin; tests compare the two and the bench tool
// times them. Results are written by index, so thread count never changes
// output.

#include <functional>

namespace homind {

void set_thread_count(int n); // n < 1 means all cores
int thread_count();

// f(i) for i in [0, count), possibly in parallel
void parallel_for(int count, const std::function<void(int)>& f);
void serial_for(int count, const std::function<void(int)>& f);

} // namespace homind
