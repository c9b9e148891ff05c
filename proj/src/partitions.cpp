#include "pathint/partitions.hpp"

#include <array>
#include <mutex>

namespace pathint {

namespace {

constexpr int kMaxN = 12;

PartitionSet build(int n) {
  PartitionSet out;
  out.n = n;
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  while (true) {
    int blocks = 0;
    for (int v : a) blocks = std::max(blocks, v + 1);
    SetPartition p(blocks);
    for (int i = 0; i < n; ++i) p[a[i]].push_back(i);
    out.partitions.push_back(std::move(p));
    // next RGS in lexicographic order
    int i = n - 1;
    while (i > 0) {
      int maxprev = 0;
      for (int j = 0; j < i; ++j) maxprev = std::max(maxprev, a[j]);
      if (a[i] <= maxprev) break;
      --i;
    }
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
  return out;
}

}  // namespace

const PartitionSet& enumerate_partitions(int n) {
  if (n < 1 || n > kMaxN)
    throw std::out_of_range("enumerate_partitions: n must be in 1..12");
  static std::array<PartitionSet, kMaxN + 1> cache;
  static std::array<std::once_flag, kMaxN + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = build(n); });
  return cache[n];
}

}  // namespace pathint
