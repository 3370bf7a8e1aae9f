#include "shatter/separators.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

#include "shatter/core.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

PartitionSystem binary_splits(int n) {
  if (n < 2) throw std::invalid_argument("binary_splits requires n >= 2");
  int bits = 0;
  while ((1LL << bits) < n) ++bits; // ceil(log2 n)
  PartitionSystem sys;
  sys.ground = n;
  sys.parts.resize(bits);
  for (int b = 0; b < bits; ++b)
    for (int x = 1; x <= n; ++x)
      if (((x - 1) >> b & 1) == 0) sys.parts[b].push_back(x);
  return sys;
}

int separating_system_size(int n) {
  if (n < 2) throw std::invalid_argument("separating system requires n >= 2");
  for (int r = 2;; ++r)
    if (binomial(r, r / 2) >= static_cast<uint64_t>(n)) return r;
}

namespace {

// Advance a sorted k-subset to its colexicographic successor.
void next_colex(std::vector<int>& s) {
  const int k = static_cast<int>(s.size());
  int j = 0;
  while (j + 1 < k && s[j] + 1 == s[j + 1]) ++j;
  ++s[j];
  for (int i = 0; i < j; ++i) s[i] = i + 1;
}

} // namespace

PartitionSystem separating_system(int n) {
  const int r = separating_system_size(n);
  const int half = r / 2;
  PartitionSystem sys;
  sys.ground = n;
  sys.parts.resize(r);
  std::vector<int> code(half);
  for (int i = 0; i < half; ++i) code[i] = i + 1;
  for (int x = 1; x <= n; ++x) {
    for (int i : code) sys.parts[i - 1].push_back(x);
    if (x < n) next_colex(code);
  }
  return sys;
}

SeparationResult verify_separating(const PartitionSystem& sys, bool ordered, int threads) {
  const int n = sys.ground;
  const int parts = static_cast<int>(sys.parts.size());
  if (n < 2) throw std::invalid_argument("partition system ground must be >= 2");
  if (parts > 64)
    throw std::invalid_argument("verify_separating supports at most 64 partitions");

  // Per-element A-side membership as one bit per partition.
  std::vector<uint64_t> mask(n + 1, 0);
  for (int p = 0; p < parts; ++p)
    for (int x : sys.parts[p]) {
      if (x < 1 || x > n) throw std::invalid_argument("partition element out of range");
      mask[x] |= 1ULL << p;
    }

  // (x,y) in row-major order; the first uncovered pair is the witness.
  const uint64_t total = static_cast<uint64_t>(n) * n;
  const auto ranges = plan_chunks(total, resolve_threads(threads), 4096);
  std::vector<std::optional<uint64_t>> found(ranges.size());
  std::atomic<int> first_failed{static_cast<int>(ranges.size())};

  run_chunks(ranges, resolve_threads(threads), [&](int ci, uint64_t lo, uint64_t hi) {
    if (ci > first_failed.load(std::memory_order_relaxed)) return;
    for (uint64_t id = lo; id < hi; ++id) {
      const int x = static_cast<int>(id / n) + 1;
      const int y = static_cast<int>(id % n) + 1;
      if (x == y) continue;
      const bool ok = ordered ? (mask[x] & ~mask[y]) != 0 : (mask[x] ^ mask[y]) != 0;
      if (!ok) {
        found[ci] = id;
        int cur = first_failed.load(std::memory_order_relaxed);
        while (ci < cur && !first_failed.compare_exchange_weak(cur, ci)) {
        }
        return;
      }
    }
  });

  SeparationResult res;
  res.holds = true;
  for (const auto& f : found)
    if (f) {
      res.holds = false;
      res.witness = {static_cast<int>(*f / n) + 1, static_cast<int>(*f % n) + 1};
      break;
    }
  return res;
}

} // namespace shatter
