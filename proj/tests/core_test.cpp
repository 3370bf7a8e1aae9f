#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "shatter/core.hpp"

using namespace shatter;

namespace {

// Independent oracle: sort the tuple's elements by their position and read
// off ranks, instead of the counting construction used by the library.
std::vector<int> brute_pattern(const Permutation& p, const std::vector<int>& xs) {
  const int k = static_cast<int>(xs.size());
  std::vector<std::pair<int, int>> by_pos; // (position, index within tuple)
  for (int i = 0; i < k; ++i) by_pos.emplace_back(p.position(xs[i]), i + 1);
  std::sort(by_pos.begin(), by_pos.end());
  std::vector<int> pattern(k);
  for (int s = 0; s < k; ++s) pattern[s] = by_pos[s].second;
  return pattern;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> row(n);
  for (int i = 0; i < n; ++i) row[i] = i + 1;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(row);
  } while (std::next_permutation(row.begin(), row.end()));
  return out;
}

} // namespace

TEST_CASE("position reads off one-line notation") {
  const Permutation p({2, 4, 1, 3});
  CHECK(p.position(4) == 2);
  CHECK(p.position(2) == 1);
  CHECK(p.position(3) == 4);
  const Permutation id = Permutation::identity(7);
  for (int a = 1; a <= 7; ++a) CHECK(id.position(a) == a);
  CHECK(Permutation({3, 2, 1, 4}).position(1) == 3);
  CHECK_THROWS_AS(p.position(0), std::invalid_argument);
  CHECK_THROWS_AS(p.position(5), std::invalid_argument);
}

TEST_CASE("order and position are inverse") {
  for (const auto& row : all_perms(5)) {
    const Permutation p(row);
    for (int a = 1; a <= 5; ++a) CHECK(p.at(p.position(a)) == a);
  }
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("pattern_of matches frozen examples") {
  CHECK(pattern_of(Permutation({2, 4, 1, 3}), KTuple({1, 3, 4})) == rank_pattern({3, 1, 2}));
  CHECK(pattern_of(Permutation({4, 2, 3, 1}), KTuple({1, 2, 3})) == rank_pattern({2, 3, 1}));
  const Permutation id = Permutation::identity(6);
  CHECK(pattern_of(id, KTuple({2, 4, 5})) == rank_pattern({1, 2, 3}));
  CHECK_THROWS_AS(pattern_of(Permutation({2, 1}), KTuple({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("pattern_of agrees with the comparator oracle for all n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto perms = all_perms(n);
    for (int k = 1; k <= n; ++k) {
      for (const auto& x : ktuples(n, k)) {
        for (const auto& row : perms) {
          const Permutation p(row);
          CHECK(pattern_of(p, x) == rank_pattern(brute_pattern(p, x.elements)));
        }
      }
    }
  }
}

TEST_CASE("reverse is an involution satisfying the position identity") {
  CHECK(Permutation({1, 2, 3, 4}).reversed() == Permutation({4, 3, 2, 1}));
  CHECK(Permutation({2, 4, 1, 3}).reversed() == Permutation({3, 1, 4, 2}));
  for (const auto& row : all_perms(6)) {
    const Permutation p(row);
    const Permutation r = p.reversed();
    CHECK(r.reversed() == p);
    for (int a = 1; a <= 6; ++a) CHECK(r.position(a) == 7 - p.position(a));
  }
}

TEST_CASE("reversing the host reverses the pattern") {
  const Permutation p({2, 4, 1, 3});
  const KTuple x({1, 3, 4});
  CHECK(pattern_of(p, x) == rank_pattern({3, 1, 2}));
  CHECK(pattern_of(p.reversed(), x) == rank_pattern({2, 1, 3}));
  for (const auto& row : all_perms(5)) {
    const Permutation q(row);
    for (const auto& t : ktuples(5, 3)) {
      const auto pat = unrank_pattern(3, pattern_of(q, t).rank);
      CHECK(pattern_of(q.reversed(), t) == rank_pattern(reversed_pattern(pat)));
    }
  }
}

TEST_CASE("pattern ranking is the lexicographic bijection") {
  CHECK(rank_pattern({1, 2, 3}).rank == 0);
  CHECK(unrank_pattern(3, 5) == std::vector<int>{3, 2, 1});

  // Enumeration oracle: ranks follow lexicographic order of the patterns.
  for (int k = 1; k <= 6; ++k) {
    const auto perms = all_perms(k);
    for (int r = 0; r < factorial(k); ++r) {
      CHECK(unrank_pattern(k, r) == perms[r]);
      CHECK(rank_pattern(perms[r]).rank == r);
    }
  }
  CHECK_THROWS_AS(unrank_pattern(3, 6), std::invalid_argument);
  CHECK_THROWS_AS(rank_pattern({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("ktuple enumeration is lexicographic and complete") {
  CHECK(ktuples(3, 3).size() == 1);
  CHECK(ktuples(4, 3).size() == 4);
  CHECK(ktuples(5, 3).size() == 10);
  CHECK_THROWS_AS(ktuples(3, 4), std::invalid_argument);

  const auto ts = ktuples(6, 3);
  CHECK(ts.size() == binomial(6, 3));
  for (size_t i = 1; i < ts.size(); ++i) CHECK(ts[i - 1] < ts[i]);

  // Rank / unrank round-trip against sequential enumeration.
  int buf[4];
  first_ktuple(4, buf);
  uint64_t rank = 0;
  do {
    CHECK(rank_ktuple(10, 4, buf) == rank);
    int buf2[4];
    unrank_ktuple(10, 4, rank, buf2);
    CHECK(std::equal(buf, buf + 4, buf2));
    ++rank;
  } while (next_ktuple(10, 4, buf));
  CHECK(rank == binomial(10, 4));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 3) == 10);
  CHECK(binomial(256, 3) == 2763520);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
}

TEST_CASE("family file round-trip") {
  const Family fam(4, {Permutation({1, 2, 3, 4}), Permutation({2, 4, 1, 3})});
  const std::string text = family_to_string(fam);
  CHECK(text == "n=4 m=2\n1 2 3 4\n2 4 1 3\n");
  std::istringstream in(text);
  CHECK(parse_family(in) == fam);
}

TEST_CASE("family file parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      parse_family(in);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == line);
    }
  };
  expect_error("m=2 n=4\n", 1);
  expect_error("n=4 m=1\n1 2 3\n", 2);
  expect_error("n=4 m=1\n1 2 3 3\n", 2);
  expect_error("n=4 m=1\n1 2 3 5\n", 2);
  expect_error("n=4 m=2\n1 2 3 4\n", 3);
  expect_error("n=4 m=1\n1 2 x 4\n", 2);
}

TEST_CASE("family members must share the ground size") {
  CHECK_THROWS_AS(Family(4, {Permutation({1, 2, 3})}), std::invalid_argument);
}
