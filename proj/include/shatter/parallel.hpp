#pragma once

// Chunked data-parallel helper. Work is split into ordered chunks; callers
// merge per-chunk results in chunk order, which keeps every parallel sweep
// deterministic regardless of worker count.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

namespace shatter {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::vector<std::pair<uint64_t, uint64_t>> plan_chunks(uint64_t total, int threads,
                                                              uint64_t min_grain) {
  std::vector<std::pair<uint64_t, uint64_t>> ranges;
  if (total == 0) return ranges;
  if (min_grain == 0) min_grain = 1;
  uint64_t chunks = static_cast<uint64_t>(threads) * 8;
  if (chunks > total / min_grain) chunks = total / min_grain;
  if (chunks < 1) chunks = 1;
  const uint64_t base = total / chunks, rem = total % chunks;
  uint64_t lo = 0;
  for (uint64_t c = 0; c < chunks; ++c) {
    const uint64_t hi = lo + base + (c < rem ? 1 : 0);
    ranges.emplace_back(lo, hi);
    lo = hi;
  }
  return ranges;
}

// fn(chunk_index, lo, hi) runs on a worker; chunk indices are handed out in
// order but may finish out of order.
inline void run_chunks(const std::vector<std::pair<uint64_t, uint64_t>>& ranges, int threads,
                       const std::function<void(int, uint64_t, uint64_t)>& fn) {
  const int nchunks = static_cast<int>(ranges.size());
  if (nchunks == 0) return;
  threads = std::min(threads, nchunks);
  if (threads <= 1) {
    for (int c = 0; c < nchunks; ++c) fn(c, ranges[c].first, ranges[c].second);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int c = next.fetch_add(1);
      if (c >= nchunks) break;
      fn(c, ranges[c].first, ranges[c].second);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

} // namespace shatter
