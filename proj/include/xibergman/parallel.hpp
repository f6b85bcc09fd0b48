#pragma once

#include <cstddef>
#include <functional>

namespace xib {

/// Worker count used by grid scans and Gram assembly (default 1).
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() workers. Each
/// index is handled exactly once; callers write into per-index slots so the
/// reduction order stays fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace xib
