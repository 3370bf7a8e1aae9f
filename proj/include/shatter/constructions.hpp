#pragma once

// Explicit family constructions: the perfect 6-family on [4], searched
// perfect families for tiny k, the blockwise recursion for 4-order partial
// shattering on [n^n], the lattice-projection step for total shattering, and
// the iterated-blocks fractional construction.

#include <cstdint>
#include <string>
#include <vector>

#include "shatter/core.hpp"

namespace shatter {

// Base-b positional codes for [b^L]: x-1 = sum (x_i - 1) * b^(L-i), most
// significant digit first.
class CodedGround {
public:
  CodedGround(int base, int length);

  int base() const { return base_; }
  int length() const { return length_; }
  uint64_t size() const { return size_; }

  std::vector<int> encode(uint64_t x) const;   // digits in [base]
  uint64_t decode(const std::vector<int>& code) const;
  int digit(uint64_t x, int level) const;      // level in 1..length
  int first_diff(uint64_t x, uint64_t y) const;

private:
  int base_;
  int length_;
  uint64_t size_;
};

struct ClaimedGuarantee {
  enum class Kind { partial, total, fraction };
  Kind kind = Kind::total;
  int k = 0;
  int t = 0;                          // partial only
  uint64_t shattered_at_least = 0;    // fraction only
};

struct ConstructionTrace {
  std::string recipe;
  std::vector<std::pair<std::string, std::string>> parameters;
  ClaimedGuarantee guarantee;
};

struct Construction {
  Family family;
  ConstructionTrace trace;
};

// The perfect 6-member family on [4].
Family q34();

// Perfect family on [k+1] of size k!, found by oracle search. k in {2,3,4}.
Construction perfect_family(int k);

// Blockwise recursion on [n^n] with n = base ground: one permutation per
// base member applied at every block level, one per separating-system
// partition of the levels, plus the decreasing permutation (if new). The
// increasing permutation is inserted into the base when absent. Requires
// every base triple to realize at least 4 orders; the output does too.
Construction little_construction(const Family& base);

// Lattice projection step with mixed side lengths: elements of the box
// prod(sides) ordered by each base member along each of the k directions,
// ties broken by ascending element value. Base must totally shatter all
// k-tuples of its ground, whose size must equal the largest leave-one-out
// side product. Output totally shatters all k-tuples of the box.
Construction lattice_step(const Family& base, const std::vector<int>& sides);

// The cubic special case: base on [n^(k-1)] to a family on [n^k] of size
// k * |base|.
Construction kcube_step(const Family& base, int n, int k);

// Totally shattering family on [N]: iterate lattice steps from the perfect
// family's ground up the tower of reachable box sizes, then restrict to [N].
// k in {3,4}; for k=4 no step grows past [5], so only N <= 5 is served.
Construction shatter_family(int k, uint64_t n_target);

// The grounds shatter_family can build at before restriction.
std::vector<uint64_t> shatter_tower(int k, uint64_t n_target);

// Keep elements 1..N of every member, in order.
Family restrict_family(const Family& fam, int n_target);

struct FractionalConstruction {
  Family family;
  ConstructionTrace trace;
  uint64_t guaranteed_shattered = 0; // n(n^2-1)/15 with n = 4^r
};

// Six permutations of [4^r], each following one fixed pattern of the perfect
// 4-ground family blockwise at every level; r = 1 reproduces that family.
FractionalConstruction fractional_family(int r);

// Re-check a construction's claimed guarantee with the checkers module.
bool verify_guarantee(const Family& fam, const ClaimedGuarantee& g, int threads = 0);

} // namespace shatter
