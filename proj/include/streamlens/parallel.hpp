#ifndef STREAMLENS_PARALLEL_HPP
#define STREAMLENS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace streamlens {

/// Worker count: STREAMLENS_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (0 in the variable means auto).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index must write only its own outputs;
/// results are then identical to a sequential loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace streamlens

#endif
