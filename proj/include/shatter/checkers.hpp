#pragma once

// Shattering property checkers: per-tuple order counts, total/partial
// shattering, fixed-pattern coverage, and the iterated monotone-subsequence
// witness extractor.

#include <cstdint>
#include <optional>
#include <vector>

#include "shatter/core.hpp"

namespace shatter {

struct CoverageOptions {
  // Per-tuple counts are materialized only while C(n,k) stays at or below
  // this cap; larger sweeps stream and keep aggregates plus a bounded
  // witness list.
  uint64_t materialize_cap = 10'000'000;
  int witness_limit = 10;
  int threads = 0; // 0 = hardware concurrency
};

struct CoverageReport {
  int n = 0;
  int k = 0;
  int m = 0;
  int min_count = 0;
  int max_count = 0;
  uint64_t shattered_count = 0;
  uint64_t total_tuples = 0;
  // Lexicographically first tuples with count < k!, up to witness_limit.
  std::vector<KTuple> unshattered_witnesses;
  bool counts_materialized = false;
  std::vector<uint16_t> per_tuple_counts; // indexed by lexicographic tuple rank

  int count_for(const KTuple& x) const;
};

// |{ pattern_of(P, X) : P in S }|.
int count_orders(const Family& s, const KTuple& x);

CoverageReport coverage(const Family& s, int k, const CoverageOptions& opt = {});

struct PropertyResult {
  bool holds = false;
  std::optional<KTuple> witness; // lexicographically least failing tuple
};

// Every k-tuple realizes at least t distinct orders.
PropertyResult satisfies_partial(const Family& s, int k, int t,
                                 const CoverageOptions& opt = {});

// Every k-tuple follows pattern R in at least one member.
PropertyResult follows_everywhere(const Family& s, const PatternRank& r,
                                  const CoverageOptions& opt = {});

// Elements of a longest monotone subsequence of `values`; the longer of the
// increasing and decreasing candidates, ties toward increasing.
std::vector<int> longest_monotone_subsequence(const std::vector<int>& values);

// Iterated extraction: X_0 = [n]; step i restricts X_{i-1} to a longest
// monotone subsequence of member i. The returned set (ascending) realizes at
// most 2 orders on any of its k-subsets across the whole family.
std::vector<int> es_witness(const Family& s);

// Largest b with b^(2^m) <= n-1; the extractor returns at least b+1 elements.
int es_witness_floor(int n, int m);

} // namespace shatter
