#pragma once

#include "shotnoise/trace.hpp"

#include <cstdint>

namespace shotnoise {

/// Randomly permutes content ids within each of K equal-count slices while
/// every timestamp stays in place. K = 1 keeps only the long-term popularity;
/// K = number of requests returns the input unchanged. Slice i draws from a
/// sub-stream derived from (seed, i).
///
/// Throws std::invalid_argument unless 1 <= K <= number of requests.
Trace slice_shuffle(const Trace &trace, std::uint64_t slices, std::uint64_t seed);

} // namespace shotnoise
