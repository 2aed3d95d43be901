#pragma once

#include <cstdint>
#include <future>
#include <vector>

#include "plattice/counting.hpp"

namespace plattice::detail {

/// Evaluates `block(lo, hi)` over contiguous blocks of [1, n] and folds the
/// results left to right with `+=`, so the combination order is fixed.
template <class T, class Block>
T sum_over_blocks(std::int64_t n, unsigned workers, T zero, Block block) {
  const auto ranges = split_range(n, workers == 0 ? 1 : workers);
  if (ranges.size() <= 1)
    return ranges.empty() ? zero : block(ranges.front().first, ranges.front().second);
  std::vector<std::future<T>> parts;
  parts.reserve(ranges.size());
  for (const auto &[lo, hi] : ranges)
    parts.push_back(std::async(std::launch::async, block, lo, hi));
  T total = zero;
  for (auto &p : parts)
    total += p.get();
  return total;
}

} // namespace plattice::detail
