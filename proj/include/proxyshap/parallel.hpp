#ifndef PROXYSHAP_PARALLEL_HPP
#define PROXYSHAP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace proxyshap {

/// Caps the number of worker threads used by parallel_for (0 = hardware).
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker, so callers writing into slot i get results that do not depend on
/// the thread count. Nested calls run sequentially on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace proxyshap

#endif  // PROXYSHAP_PARALLEL_HPP
