#pragma once

#include <cstddef>
#include <functional>

namespace leja
{

/// Worker count used by the data-parallel scans. Defaults to the
/// LEJA_THREADS environment variable, else the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Calls body(i) for every i in [0, count), split into contiguous chunks
/// over thread_count() workers. Callers write results into per-index slots
/// and reduce afterwards in index order, so output never depends on the
/// worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace leja
