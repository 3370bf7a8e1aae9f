#pragma once

// Constructive two-block partition systems: binary splits meeting the
// ceil(log2 n) unordered-separation optimum, and antichain-coded systems
// separating every ordered pair.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace shatter {

struct PartitionSystem {
  int ground = 0;
  // A-side of each partition, sorted ascending; B is the complement.
  std::vector<std::vector<int>> parts;
};

// ceil(log2 n) partitions splitting on the bits of x-1; separates every
// unordered pair.
PartitionSystem binary_splits(int n);

// Completely separating system: for every ordered pair (x,y) some partition
// has x in A and y in B. Elements are coded by distinct floor(r/2)-subsets
// of [r] (colexicographic order) with the minimal feasible r.
PartitionSystem separating_system(int n);

// Minimal r with C(r, floor(r/2)) >= n.
int separating_system_size(int n);

struct SeparationResult {
  bool holds = false;
  // Lexicographically least uncovered (x, y) when the check fails.
  std::optional<std::pair<int, int>> witness;
};

SeparationResult verify_separating(const PartitionSystem& sys, bool ordered,
                                   int threads = 0);

} // namespace shatter
