#pragma once

// Exact brute-force search with symmetry reduction: the first member is
// fixed to the identity permutation and the rest are enumerated in strictly
// increasing lexicographic order, so the reported witness is the
// lexicographically least optimum overall.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shatter/core.hpp"

namespace shatter {

struct SearchProblem {
  enum class Type { min_family_size, max_shattered };
  Type type = Type::min_family_size;
  int n = 0;
  int k = 0;
  int t = 0; // min_family_size
  int m = 0; // max_shattered
};

struct SearchOptions {
  uint64_t node_budget = 100'000'000'000ULL;
  int threads = 0; // 0 = hardware concurrency
};

struct SearchReport {
  SearchProblem problem;
  std::optional<uint64_t> optimum;  // empty when the budget ran out first
  std::optional<Family> witness;    // canonical: lexicographically least
  uint64_t total_tuples = 0;        // max_shattered only
  uint64_t nodes_explored = 0;
  bool proof_of_optimality = false;
  double wall_seconds = 0.0;
};

// Instances whose upfront search-space estimate exceeds the node budget are
// refused before any work starts.
struct infeasible_error : std::runtime_error {
  double estimated_nodes;
  infeasible_error(const std::string& message, double estimate)
      : std::runtime_error(message), estimated_nodes(estimate) {}
};

// Smallest family partially shattering every k-tuple of [n] with t orders.
SearchReport min_family_size(int n, int k, int t, const SearchOptions& opt = {});

// Largest number of totally shattered k-tuples over all m-member families.
SearchReport max_shattered(int n, int k, int m, const SearchOptions& opt = {});

struct ProbeEntry {
  int n = 0;
  uint64_t shattered = 0;
  uint64_t total = 0;
  bool proof_of_optimality = false;
};

struct ProbeReport {
  int k = 0;
  int m = 0;
  std::vector<ProbeEntry> entries;
  bool non_increasing = false; // exact rational comparison across entries
  bool complete = false;       // every entry searched to proof
};

// F_k(n,m) per n; flags whether the fraction sequence is non-increasing.
ProbeReport monotonicity_probe(int k, int m, const std::vector<int>& ns,
                               const SearchOptions& opt = {});

struct AppendixReplayReport {
  uint64_t completions = 0;      // all ways of inserting element 5
  int min_unshattered = 0;       // fewest unshattered triples over completions
  bool confirmed = false;        // every completion leaves >= 2 unshattered
};

// Replays the hand case analysis for F_3(5,6): inserting element 5 into
// every member of the perfect 6-family on [4], in every combination of
// positions, always leaves at least 2 of the 10 triples unshattered.
AppendixReplayReport appendix_replay_f356();

} // namespace shatter
