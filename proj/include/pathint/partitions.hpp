#pragma once

// Set partitions of {0..n-1} via restricted-growth strings, in lexicographic
// RGS order (deterministic). Counts are the Bell numbers; n is capped at 12,
// comfortably above anything the jet calculus requests.

#include <stdexcept>
#include <vector>

namespace pathint {

using SetPartition = std::vector<std::vector<int>>;  // blocks, by first element

struct PartitionSet {
  int n = 0;
  std::vector<SetPartition> partitions;
};

const PartitionSet& enumerate_partitions(int n);

}  // namespace pathint
