#pragma once

// Permutations as linear orders, pattern restriction and ranking, k-tuple
// enumeration, and the family container with its text file format.
// Elements, positions, and file formats are 1-based throughout.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace shatter {

class Permutation {
public:
  // One-line notation: order[i] is the element at position i+1.
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  static Permutation decreasing(int n);

  int size() const { return static_cast<int>(order_.size()); }

  // Element at position i, 1 <= i <= n.
  int at(int i) const;

  // pos(P, a): the position of element a, so that at(position(a)) == a.
  int position(int a) const;

  const std::vector<int>& order() const { return order_; }
  // positions()[a-1] == position(a); precomputed.
  const std::vector<int>& positions() const { return pos_; }

  // Q with position(Q, a) == n+1 - position(P, a) for every a.
  Permutation reversed() const;

  bool operator==(const Permutation& other) const { return order_ == other.order_; }
  std::strong_ordering operator<=>(const Permutation& other) const {
    return order_ <=> other.order_;
  }

private:
  std::vector<int> order_;
  std::vector<int> pos_;
};

// Canonical id of a pattern in S_k: Lehmer-code rank in lexicographic order,
// so rank 0 is the increasing pattern and rank k!-1 the decreasing one.
struct PatternRank {
  int k = 0;
  int rank = 0;
  bool operator==(const PatternRank&) const = default;
  auto operator<=>(const PatternRank&) const = default;
};

// Strictly increasing k values from 1..n.
struct KTuple {
  std::vector<int> elements;

  KTuple() = default;
  explicit KTuple(std::vector<int> elems);

  int k() const { return static_cast<int>(elements.size()); }
  bool operator==(const KTuple&) const = default;
  auto operator<=>(const KTuple&) const = default;
};

// Ordered list of permutations over a common ground size.
class Family {
public:
  Family(int n, std::vector<Permutation> members);

  int ground() const { return n_; }
  int size() const { return static_cast<int>(members_.size()); }
  const Permutation& member(int i) const { return members_[i]; }
  const std::vector<Permutation>& members() const { return members_; }

  bool operator==(const Family&) const = default;

private:
  int n_;
  std::vector<Permutation> members_;
};

int factorial(int k);            // k <= 20
uint64_t binomial(int n, int k); // exact; throws std::overflow_error if it does not fit

PatternRank rank_pattern(const std::vector<int>& pattern);
std::vector<int> unrank_pattern(int k, int rank);

// The member of S_k order-isomorphic to P restricted to X.
PatternRank pattern_of(const Permutation& p, const KTuple& x);

// One-line sequence reversed; the pattern realized after reversing the host.
std::vector<int> reversed_pattern(const std::vector<int>& pattern);

// Lexicographic enumeration of k-subsets of [n] as raw buffers (hot paths)
// and as materialized KTuples (small instances).
void first_ktuple(int k, int* out);
bool next_ktuple(int n, int k, int* io);
void unrank_ktuple(int n, int k, uint64_t rank, int* out);
uint64_t rank_ktuple(int n, int k, const int* tuple);
std::vector<KTuple> ktuples(int n, int k);

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_num, const std::string& message);
};

// Family file format: line 1 is "n=<n> m=<m>", then m lines of n
// space-separated integers. Rejects malformed input with the offending line.
Family parse_family(std::istream& in);
Family parse_family_file(const std::string& path);
void write_family(std::ostream& out, const Family& fam);
void write_family_file(const std::string& path, const Family& fam);
std::string family_to_string(const Family& fam);

} // namespace shatter
