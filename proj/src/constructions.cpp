#include "shatter/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "shatter/checkers.hpp"
#include "shatter/oracle.hpp"
#include "shatter/separators.hpp"

namespace shatter {

namespace {

constexpr uint64_t kMaxGround = 10'000'000; // largest ground we materialize

std::string u64s(uint64_t v) { return std::to_string(v); }

// The six base patterns; the first is the identity.
const std::vector<std::vector<int>>& q34_rows() {
  static const std::vector<std::vector<int>> rows = {
      {1, 2, 3, 4}, {2, 4, 1, 3}, {3, 4, 1, 2},
      {1, 4, 3, 2}, {4, 2, 3, 1}, {3, 2, 1, 4},
  };
  return rows;
}

// Permutation of [ground] from a digit key: element x goes to position
// key(x)+1, where key is a bijection onto [0, ground).
Permutation from_digit_key(uint64_t ground, const std::vector<uint64_t>& key) {
  std::vector<int> order(ground);
  for (uint64_t x = 1; x <= ground; ++x) order[key[x - 1]] = static_cast<int>(x);
  return Permutation(std::move(order));
}

// Blockwise application of P at every level of a coded ground: x precedes y
// iff the first differing digit of x precedes that of y in P. Realized by
// mapping each digit through P's positions and reading the result as a
// number.
Permutation blockwise(const CodedGround& cg, const Permutation& p) {
  const uint64_t ground = cg.size();
  const auto& pos = p.positions();
  std::vector<uint64_t> key(ground);
  for (uint64_t x = 1; x <= ground; ++x) {
    uint64_t rem = x - 1, acc = 0;
    for (int lvl = cg.length() - 1, shift = 1; lvl >= 0; --lvl) {
      const int digit = static_cast<int>(rem % cg.base());
      rem /= cg.base();
      acc += static_cast<uint64_t>(pos[digit] - 1) * shift;
      shift *= cg.base();
    }
    key[x - 1] = acc;
  }
  return from_digit_key(ground, key);
}

// Level-wise monotone orders: level digits in ascending_levels ascend,
// the rest descend.
Permutation levelwise(const CodedGround& cg, const std::vector<char>& ascending) {
  const uint64_t ground = cg.size();
  const int b = cg.base();
  std::vector<uint64_t> key(ground);
  for (uint64_t x = 1; x <= ground; ++x) {
    uint64_t rem = x - 1, acc = 0;
    for (int lvl = cg.length() - 1, shift = 1; lvl >= 0; --lvl) {
      const int digit = static_cast<int>(rem % b);
      rem /= b;
      acc += static_cast<uint64_t>(ascending[lvl] ? digit : b - 1 - digit) * shift;
      shift *= b;
    }
    key[x - 1] = acc;
  }
  return from_digit_key(ground, key);
}

} // namespace

CodedGround::CodedGround(int base, int length) : base_(base), length_(length) {
  if (base < 2) throw std::invalid_argument("code base must be >= 2");
  if (length < 1) throw std::invalid_argument("code length must be >= 1");
  size_ = 1;
  for (int i = 0; i < length; ++i) {
    size_ *= static_cast<uint64_t>(base);
    if (size_ > kMaxGround)
      throw std::invalid_argument("coded ground larger than " + u64s(kMaxGround));
  }
}

std::vector<int> CodedGround::encode(uint64_t x) const {
  if (x < 1 || x > size_) throw std::invalid_argument("element out of coded ground");
  std::vector<int> code(length_);
  uint64_t rem = x - 1;
  for (int i = length_ - 1; i >= 0; --i) {
    code[i] = static_cast<int>(rem % base_) + 1;
    rem /= base_;
  }
  return code;
}

uint64_t CodedGround::decode(const std::vector<int>& code) const {
  if (static_cast<int>(code.size()) != length_)
    throw std::invalid_argument("code length mismatch");
  uint64_t x = 0;
  for (int i = 0; i < length_; ++i) {
    if (code[i] < 1 || code[i] > base_) throw std::invalid_argument("code digit out of range");
    x = x * base_ + static_cast<uint64_t>(code[i] - 1);
  }
  return x + 1;
}

int CodedGround::digit(uint64_t x, int level) const {
  if (level < 1 || level > length_) throw std::invalid_argument("level out of range");
  uint64_t rem = x - 1;
  for (int i = length_; i > level; --i) rem /= base_;
  return static_cast<int>(rem % base_) + 1;
}

int CodedGround::first_diff(uint64_t x, uint64_t y) const {
  if (x == y) throw std::invalid_argument("first_diff is undefined for equal elements");
  for (int lvl = 1; lvl <= length_; ++lvl)
    if (digit(x, lvl) != digit(y, lvl)) return lvl;
  throw std::logic_error("distinct elements with equal codes");
}

Family q34() {
  std::vector<Permutation> members;
  members.reserve(6);
  for (const auto& row : q34_rows()) members.push_back(Permutation(row));
  return Family(4, std::move(members));
}

Construction perfect_family(int k) {
  if (k < 2 || k > 4)
    throw std::invalid_argument("perfect_family search is capped at k in {2,3,4}");
  const int kf = factorial(k);
  SearchReport rep = min_family_size(k + 1, k, kf);
  if (!rep.optimum || *rep.optimum != static_cast<uint64_t>(kf) || !rep.witness)
    throw std::logic_error("perfect family search did not find a k! witness");
  Construction c{*rep.witness, {}};
  c.trace.recipe = "perfect";
  c.trace.parameters = {{"k", std::to_string(k)}, {"n", std::to_string(k + 1)}};
  c.trace.guarantee = {ClaimedGuarantee::Kind::total, k, 0, 0};
  return c;
}

Construction little_construction(const Family& base_in) {
  const int n = base_in.ground();
  if (n < 3) throw std::invalid_argument("little_construction requires base ground >= 3");

  const PropertyResult pre = satisfies_partial(base_in, 3, 4);
  if (!pre.holds) {
    std::string msg = "base does not realize 4 orders on every triple";
    if (pre.witness) {
      msg += "; failing triple {";
      for (size_t i = 0; i < pre.witness->elements.size(); ++i)
        msg += (i ? "," : "") + std::to_string(pre.witness->elements[i]);
      msg += "}";
    }
    throw std::invalid_argument(msg);
  }

  // The level coverage argument needs the increasing order among the
  // blockwise permutations.
  std::vector<Permutation> base = base_in.members();
  const Permutation inc = Permutation::identity(n);
  if (std::find(base.begin(), base.end(), inc) == base.end())
    base.insert(base.begin(), inc);

  const CodedGround cg(n, n);
  std::vector<Permutation> out;
  out.reserve(base.size() + n + 2);
  for (const auto& p : base) out.push_back(blockwise(cg, p));

  const PartitionSystem sep = separating_system(n);
  for (const auto& a_side : sep.parts) {
    std::vector<char> ascending(n, 0);
    for (int lvl : a_side) ascending[lvl - 1] = 1;
    out.push_back(levelwise(cg, ascending));
  }

  const Permutation dec = Permutation::decreasing(static_cast<int>(cg.size()));
  if (std::find(out.begin(), out.end(), dec) == out.end()) out.push_back(dec);

  Construction c{Family(static_cast<int>(cg.size()), std::move(out)), {}};
  c.trace.recipe = "little";
  c.trace.parameters = {{"n", std::to_string(n)},
                        {"base_size", std::to_string(base.size())},
                        {"separators", std::to_string(sep.parts.size())},
                        {"ground", u64s(cg.size())}};
  c.trace.guarantee = {ClaimedGuarantee::Kind::partial, 3, 4, 0};
  return c;
}

Construction lattice_step(const Family& base, const std::vector<int>& sides) {
  const int k = static_cast<int>(sides.size());
  if (k < 2) throw std::invalid_argument("lattice_step needs at least 2 directions");
  uint64_t ground = 1;
  for (int s : sides) {
    if (s < 1) throw std::invalid_argument("lattice sides must be >= 1");
    ground *= static_cast<uint64_t>(s);
    if (ground > kMaxGround)
      throw std::invalid_argument("lattice ground larger than " + u64s(kMaxGround));
  }
  // Base must hold every leave-one-out projection; its ground is the largest.
  uint64_t need = 0;
  for (int j = 0; j < k; ++j) {
    uint64_t prod = 1;
    for (int i = 0; i < k; ++i)
      if (i != j) prod *= static_cast<uint64_t>(sides[i]);
    need = std::max(need, prod);
  }
  if (static_cast<uint64_t>(base.ground()) != need)
    throw std::invalid_argument("base ground must equal the largest projection size " +
                                u64s(need));

  const CoverageReport cov = coverage(base, k);
  if (cov.min_count != factorial(k)) {
    std::string msg = "base does not shatter every " + std::to_string(k) + "-tuple";
    if (!cov.unshattered_witnesses.empty()) {
      msg += "; failing tuple {";
      const auto& w = cov.unshattered_witnesses.front().elements;
      for (size_t i = 0; i < w.size(); ++i) msg += (i ? "," : "") + std::to_string(w[i]);
      msg += "}";
    }
    throw std::invalid_argument(msg);
  }

  // Mixed-radix digits of each element, most significant first.
  const int iground = static_cast<int>(ground);
  std::vector<int> digitbuf(static_cast<size_t>(iground) * k);
  for (uint64_t x = 0; x < ground; ++x) {
    uint64_t rem = x;
    for (int j = k - 1; j >= 0; --j) {
      digitbuf[x * k + j] = static_cast<int>(rem % sides[j]);
      rem /= sides[j];
    }
  }

  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(base.size()) * k);
  std::vector<int> proj(iground);
  std::vector<int> bucket_start(base.ground() + 2);
  std::vector<int> order(iground);
  for (const auto& p : base.members()) {
    const auto& pos = p.positions();
    for (int j = 0; j < k; ++j) {
      // Row-major rank of the j-omitted projection, then the base position
      // of that element keyed for a counting sort; ascending x breaks ties.
      for (int x = 0; x < iground; ++x) {
        uint64_t r = 0;
        for (int i = 0; i < k; ++i)
          if (i != j) r = r * sides[i] + static_cast<uint64_t>(digitbuf[static_cast<size_t>(x) * k + i]);
        proj[x] = pos[r]; // r+1 is the base element, pos is 0-indexed by element-1
      }
      std::fill(bucket_start.begin(), bucket_start.end(), 0);
      for (int x = 0; x < iground; ++x) ++bucket_start[proj[x] + 1];
      for (size_t i = 1; i < bucket_start.size(); ++i) bucket_start[i] += bucket_start[i - 1];
      for (int x = 0; x < iground; ++x) order[bucket_start[proj[x]]++] = x + 1;
      out.push_back(Permutation(order));
    }
  }

  Construction c{Family(iground, std::move(out)), {}};
  c.trace.recipe = "lattice";
  std::string side_str;
  for (int i = 0; i < k; ++i) side_str += (i ? "x" : "") + std::to_string(sides[i]);
  c.trace.parameters = {{"sides", side_str},
                        {"k", std::to_string(k)},
                        {"base_ground", std::to_string(base.ground())},
                        {"base_size", std::to_string(base.size())}};
  c.trace.guarantee = {ClaimedGuarantee::Kind::total, k, 0, 0};
  return c;
}

Construction kcube_step(const Family& base, int n, int k) {
  if (n < 2) throw std::invalid_argument("kcube_step requires n >= 2");
  if (k < 2) throw std::invalid_argument("kcube_step requires k >= 2");
  Construction c = lattice_step(base, std::vector<int>(k, n));
  c.trace.recipe = "kcube";
  c.trace.parameters = {{"n", std::to_string(n)},
                        {"k", std::to_string(k)},
                        {"base_ground", std::to_string(base.ground())},
                        {"base_size", std::to_string(base.size())}};
  return c;
}

namespace {

// Greedy maximal step: sides (s, ..., s, c) with s = floor(g^(1/(k-1))) and
// c = floor(g / s^(k-2)), the largest box whose every leave-one-out product
// stays within the current ground g.
std::vector<int> next_sides(int k, uint64_t g) {
  uint64_t s = 1;
  while (true) {
    uint64_t prod = 1;
    bool fits = true;
    for (int i = 0; i < k - 1; ++i) {
      prod *= (s + 1);
      if (prod > g) {
        fits = false;
        break;
      }
    }
    if (!fits) break;
    ++s;
  }
  uint64_t rest = g;
  for (int i = 0; i < k - 2; ++i) rest /= s;
  std::vector<int> sides(k, static_cast<int>(s));
  sides[k - 1] = static_cast<int>(rest);
  return sides;
}

} // namespace

std::vector<uint64_t> shatter_tower(int k, uint64_t n_target) {
  if (k < 3 || k > 4) throw std::invalid_argument("shatter_family supports k in {3,4}");
  if (n_target < static_cast<uint64_t>(k))
    throw std::invalid_argument("target ground must be at least k");
  std::vector<uint64_t> tower = {static_cast<uint64_t>(k) + 1};
  while (tower.back() < n_target) {
    const std::vector<int> sides = next_sides(k, tower.back());
    uint64_t g = 1;
    for (int s : sides) g *= static_cast<uint64_t>(s);
    if (g <= tower.back())
      throw std::invalid_argument("no growing step from ground " + u64s(tower.back()) +
                                  " for k=" + std::to_string(k) +
                                  "; targets above it are unreachable");
    if (g > kMaxGround)
      throw std::invalid_argument("tower ground larger than " + u64s(kMaxGround));
    tower.push_back(g);
  }
  return tower;
}

Family restrict_family(const Family& fam, int n_target) {
  if (n_target < 1 || n_target > fam.ground())
    throw std::invalid_argument("restriction target out of range");
  if (n_target == fam.ground()) return fam;
  std::vector<Permutation> members;
  members.reserve(fam.size());
  for (const auto& p : fam.members()) {
    std::vector<int> kept;
    kept.reserve(n_target);
    for (int v : p.order())
      if (v <= n_target) kept.push_back(v);
    members.push_back(Permutation(std::move(kept)));
  }
  return Family(n_target, std::move(members));
}

Construction shatter_family(int k, uint64_t n_target) {
  const std::vector<uint64_t> tower = shatter_tower(k, n_target);

  Construction cur = perfect_family(k);
  std::string steps;
  for (size_t i = 1; i < tower.size(); ++i) {
    const std::vector<int> sides = next_sides(k, tower[i - 1]);
    // The step consumes a base of exactly the largest projection size.
    uint64_t need = 1;
    for (int j = 1; j < k; ++j) need *= static_cast<uint64_t>(sides[j]);
    const Family base = restrict_family(cur.family, static_cast<int>(need));
    Construction next = lattice_step(base, sides);
    if (!steps.empty()) steps += ";";
    steps += next.trace.parameters[0].second; // sides string
    cur.family = std::move(next.family);
  }

  Construction c{restrict_family(cur.family, static_cast<int>(n_target)), {}};
  c.trace.recipe = "shatter";
  c.trace.parameters = {{"k", std::to_string(k)},
                        {"N", u64s(n_target)},
                        {"built_at", u64s(tower.back())},
                        {"steps", steps.empty() ? "none" : steps}};
  c.trace.guarantee = {ClaimedGuarantee::Kind::total, k, 0, 0};
  return c;
}

FractionalConstruction fractional_family(int r) {
  if (r < 1) throw std::invalid_argument("fractional_family requires r >= 1");
  const CodedGround cg(4, r);
  const uint64_t n = cg.size();

  std::vector<Permutation> members;
  members.reserve(6);
  for (const auto& row : q34_rows()) members.push_back(blockwise(cg, Permutation(row)));

  FractionalConstruction fc{Family(static_cast<int>(n), std::move(members)), {}, 0};
  fc.guaranteed_shattered = n * (n * n - 1) / 15;
  fc.trace.recipe = "fractional";
  fc.trace.parameters = {{"r", std::to_string(r)}, {"n", u64s(n)}};
  fc.trace.guarantee = {ClaimedGuarantee::Kind::fraction, 3, 0, fc.guaranteed_shattered};
  return fc;
}

bool verify_guarantee(const Family& fam, const ClaimedGuarantee& g, int threads) {
  CoverageOptions opt;
  opt.threads = threads;
  switch (g.kind) {
    case ClaimedGuarantee::Kind::partial:
      return satisfies_partial(fam, g.k, g.t, opt).holds;
    case ClaimedGuarantee::Kind::total:
      return coverage(fam, g.k, opt).min_count == factorial(g.k);
    case ClaimedGuarantee::Kind::fraction:
      return coverage(fam, g.k, opt).shattered_count >= g.shattered_at_least;
  }
  return false;
}

} // namespace shatter
