#include <doctest.h>

#include <algorithm>
#include <set>

#include "shatter/checkers.hpp"
#include "shatter/constructions.hpp"

using namespace shatter;

namespace {

Family identity_only(int n) { return Family(n, {Permutation::identity(n)}); }

Family id_and_reverse(int n) {
  return Family(n, {Permutation::identity(n), Permutation::decreasing(n)});
}

// O(2^n) oracle for the longest monotone subsequence.
std::vector<int> brute_lms(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  std::vector<int> best;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(seq[i]);
    const bool inc = std::is_sorted(sub.begin(), sub.end());
    const bool dec = std::is_sorted(sub.rbegin(), sub.rend());
    if ((inc || dec) && sub.size() > best.size()) best = sub;
  }
  return best;
}

} // namespace

TEST_CASE("count_orders") {
  const Family q = q34();
  CHECK(count_orders(q, KTuple({1, 2, 3})) == 6);
  CHECK(count_orders(q, KTuple({1, 2, 4})) == 6);
  CHECK(count_orders(identity_only(5), KTuple({2, 3, 5})) == 1);
  for (const auto& x : ktuples(5, 3)) CHECK(count_orders(id_and_reverse(5), x) == 2);
  CHECK_THROWS_AS(count_orders(Family(4, {}), KTuple({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("coverage of the perfect 4-ground family") {
  const CoverageReport rep = coverage(q34(), 3);
  CHECK(rep.min_count == 6);
  CHECK(rep.max_count == 6);
  CHECK(rep.shattered_count == 4);
  CHECK(rep.total_tuples == 4);
  CHECK(rep.unshattered_witnesses.empty());
  CHECK(rep.counts_materialized);
  CHECK(rep.count_for(KTuple({1, 3, 4})) == 6);
}

TEST_CASE("coverage aggregates and witnesses") {
  const CoverageReport rep = coverage(id_and_reverse(5), 3);
  CHECK(rep.min_count == 2);
  CHECK(rep.max_count == 2);
  CHECK(rep.shattered_count == 0);
  CHECK(rep.total_tuples == 10);
  REQUIRE(!rep.unshattered_witnesses.empty());
  CHECK(rep.unshattered_witnesses.front() == KTuple({1, 2, 3}));
  CHECK_THROWS_AS(coverage(id_and_reverse(5), 6), std::invalid_argument);
}

TEST_CASE("coverage shattered_count is zero below k! members") {
  // Any 5 permutations of [5] leave every triple short of its 6 orders.
  std::vector<Permutation> members;
  std::vector<int> row = {1, 2, 3, 4, 5};
  for (int i = 0; i < 5; ++i) {
    members.push_back(Permutation(row));
    std::next_permutation(row.begin(), row.end());
  }
  const CoverageReport rep = coverage(Family(5, std::move(members)), 3);
  CHECK(rep.shattered_count == 0);
}

TEST_CASE("coverage streaming path matches the materialized path") {
  const Family fam = id_and_reverse(10);
  CoverageOptions small_cap;
  small_cap.materialize_cap = 10;
  small_cap.witness_limit = 5;
  const CoverageReport streamed = coverage(fam, 3, small_cap);
  const CoverageReport full = coverage(fam, 3);
  CHECK(!streamed.counts_materialized);
  CHECK(full.counts_materialized);
  CHECK(streamed.min_count == full.min_count);
  CHECK(streamed.max_count == full.max_count);
  CHECK(streamed.shattered_count == full.shattered_count);
  CHECK(streamed.unshattered_witnesses ==
        std::vector<KTuple>(full.unshattered_witnesses.begin(),
                            full.unshattered_witnesses.begin() + 5));
}

TEST_CASE("coverage is worker-count independent") {
  const Family q = q34();
  CoverageOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const CoverageReport a = coverage(q, 3, one);
  const CoverageReport b = coverage(q, 3, four);
  CHECK(a.min_count == b.min_count);
  CHECK(a.shattered_count == b.shattered_count);
  CHECK(a.per_tuple_counts == b.per_tuple_counts);
  CHECK(a.unshattered_witnesses == b.unshattered_witnesses);
}

TEST_CASE("satisfies_partial") {
  CHECK(satisfies_partial(q34(), 3, 6).holds);
  const PropertyResult res = satisfies_partial(identity_only(4), 3, 2);
  CHECK(!res.holds);
  CHECK(*res.witness == KTuple({1, 2, 3}));
  CHECK_THROWS_AS(satisfies_partial(q34(), 3, 7), std::invalid_argument);

  // Monotone in t.
  for (int t = 1; t <= 6; ++t) {
    const bool holds = satisfies_partial(id_and_reverse(6), 3, t).holds;
    CHECK(holds == (t <= 2));
  }
}

TEST_CASE("satisfies_partial returns the lexicographically least failure") {
  // Member shatters nothing beyond pair {5,6} patterns; compare the reported
  // witness against a direct scan.
  const Family fam(6, {Permutation::identity(6), Permutation({2, 1, 3, 4, 6, 5})});
  const PropertyResult res = satisfies_partial(fam, 3, 2);
  REQUIRE(!res.holds);
  for (const auto& x : ktuples(6, 3)) {
    if (count_orders(fam, x) < 2) {
      CHECK(*res.witness == x);
      break;
    }
  }
}

TEST_CASE("follows_everywhere") {
  CHECK(follows_everywhere(identity_only(5), rank_pattern({1, 2, 3})).holds);
  CHECK(!follows_everywhere(id_and_reverse(4), rank_pattern({2, 1, 3})).holds);
  for (int r = 0; r < 6; ++r) CHECK(follows_everywhere(q34(), PatternRank{3, r}).holds);
  const PropertyResult res = follows_everywhere(id_and_reverse(4), rank_pattern({2, 1, 3}));
  CHECK(*res.witness == KTuple({1, 2, 3}));
}

TEST_CASE("longest monotone subsequence matches brute force up to n = 12") {
  const std::vector<std::vector<int>> cases = {
      {1},
      {2, 1},
      {3, 1, 4, 2},
      {1, 2, 3, 4, 5, 6, 7, 8},
      {8, 7, 6, 5, 4, 3, 2, 1},
      {4, 8, 1, 6, 3, 9, 2, 7, 5},
      {6, 1, 8, 3, 10, 5, 12, 7, 2, 9, 4, 11},
      {7, 10, 2, 5, 12, 1, 9, 4, 11, 6, 3, 8},
      {2, 4, 1, 3, 6, 8, 5, 7, 10, 12, 9, 11},
  };
  for (const auto& seq : cases) {
    const auto got = longest_monotone_subsequence(seq);
    const auto want = brute_lms(seq);
    CHECK(got.size() == want.size());
    // Result is itself monotone and a subsequence of the input.
    const bool inc = std::is_sorted(got.begin(), got.end());
    const bool dec = std::is_sorted(got.rbegin(), got.rend());
    CHECK((inc || dec));
    size_t pos = 0;
    for (int v : seq)
      if (pos < got.size() && got[pos] == v) ++pos;
    CHECK(pos == got.size());
  }
}

TEST_CASE("ties between increasing and decreasing go to increasing") {
  const auto got = longest_monotone_subsequence({2, 1, 3});
  CHECK(std::is_sorted(got.begin(), got.end()));
  CHECK(got.size() == 2);
}

TEST_CASE("es_witness on monotone families keeps the whole ground") {
  const std::vector<int> all5 = {1, 2, 3, 4, 5};
  CHECK(es_witness(identity_only(5)) == all5);
  const std::vector<int> all9 = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(es_witness(id_and_reverse(9)) == all9);
}

TEST_CASE("es_witness output realizes at most 2 orders on a mid-size family") {
  // Three fixed members of S_257: identity-adjacent, a multiplier map, and a
  // rotated reversal.
  const int n = 257;
  std::vector<int> mul3(n), rotrev(n);
  for (int i = 0; i < n; ++i) {
    mul3[i] = static_cast<int>((static_cast<int64_t>(3) * i) % n) + 1;
    rotrev[i] = (((n - 1 - i) + 100) % n) + 1;
  }
  const Family fam(n, {Permutation::identity(n), Permutation(mul3), Permutation(rotrev)});
  const std::vector<int> witness = es_witness(fam);

  CHECK(static_cast<int>(witness.size()) >= es_witness_floor(n, fam.size()) + 1);
  CHECK(es_witness_floor(257, 3) == 2); // 2^8 = 256

  for (size_t a = 0; a < witness.size(); ++a)
    for (size_t b = a + 1; b < witness.size(); ++b)
      for (size_t c = b + 1; c < witness.size(); ++c)
        CHECK(count_orders(fam, KTuple({witness[a], witness[b], witness[c]})) <= 2);
}

TEST_CASE("es_witness floor bound") {
  CHECK(es_witness_floor(257, 3) == 2);
  CHECK(es_witness_floor(17, 1) == 4);  // floor(sqrt(16)) = 4
  CHECK(es_witness_floor(17, 2) == 2);
  CHECK(es_witness_floor(5, 1) == 2);
  CHECK(es_witness_floor(2, 4) == 1);
}
