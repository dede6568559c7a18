#pragma once

#include <cstddef>
#include <functional>

namespace siegelkit {

/// Worker-count hint for parallelizable drivers (verification sweeps,
/// table recomputation). 1 disables parallelism; results are identical
/// either way.
void set_thread_hint(int n);
int thread_hint();

/// Runs f(i) for i in [0, n), splitting across thread_hint() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace siegelkit
