// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_PARALLEL_HPP
#define MOLLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mollab {

/// Process-wide worker count for parallel_for. 0 selects
/// hardware_concurrency. Set once at startup (the CLI `threads` key);
/// not synchronized against concurrent parallel_for calls.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n). Splits into contiguous chunks across
/// worker threads; falls back to a serial loop for small n or a single
/// worker. body must not throw across chunks it does not own.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mollab

#endif
