#include "shatter/checkers.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>

#include "shatter/parallel.hpp"

namespace shatter {

namespace {

constexpr int kMaxSweepK = 6; // k! masks up to 720 bits

// Pattern rank of a triple from pairwise position comparisons.
// Index bits: (q1<q2)<<2 | (q1<q3)<<1 | (q2<q3).
constexpr int kTripleRank[8] = {5, 3, -1, 2, 4, -1, 1, 0};

struct SweepCtx {
  int n = 0, k = 0, m = 0;
  int pat_count = 0;
  int words = 0;
  std::vector<const int*> pos; // positions()[e-1] per member
};

SweepCtx make_ctx(const Family& s, int k) {
  if (s.size() < 1) throw std::invalid_argument("family must be non-empty");
  if (k < 1 || k > s.ground())
    throw std::invalid_argument("tuple size k must satisfy 1 <= k <= n");
  if (k > kMaxSweepK)
    throw std::invalid_argument("tuple sweeps support k <= " + std::to_string(kMaxSweepK));
  SweepCtx ctx;
  ctx.n = s.ground();
  ctx.k = k;
  ctx.m = s.size();
  ctx.pat_count = factorial(k);
  ctx.words = (ctx.pat_count + 63) / 64;
  ctx.pos.reserve(ctx.m);
  for (const auto& p : s.members()) ctx.pos.push_back(p.positions().data());
  return ctx;
}

inline int pattern_rank_at(const SweepCtx& ctx, const int* pos, const int* tuple) {
  const int k = ctx.k;
  if (k == 3) {
    const int q1 = pos[tuple[0] - 1], q2 = pos[tuple[1] - 1], q3 = pos[tuple[2] - 1];
    return kTripleRank[((q1 < q2) << 2) | ((q1 < q3) << 1) | (q2 < q3)];
  }
  int q[kMaxSweepK];
  for (int i = 0; i < k; ++i) q[i] = pos[tuple[i] - 1];
  int r[kMaxSweepK];
  for (int i = 0; i < k; ++i) {
    int rho = 0;
    for (int j = 0; j < k; ++j)
      if (q[j] < q[i]) ++rho;
    r[rho] = i;
  }
  int rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < k; ++j)
      if (r[j] < r[i]) ++smaller_after;
    rank = rank * (k - i) + smaller_after;
  }
  return rank;
}

// Distinct pattern count for one tuple, stopping once `stop_at` is reached.
inline int tuple_order_count(const SweepCtx& ctx, const int* tuple, int stop_at) {
  uint64_t mask[12] = {0};
  int count = 0;
  for (int j = 0; j < ctx.m; ++j) {
    const int r = pattern_rank_at(ctx, ctx.pos[j], tuple);
    const uint64_t bit = 1ULL << (r & 63);
    if (!(mask[r >> 6] & bit)) {
      mask[r >> 6] |= bit;
      if (++count >= stop_at) return count;
    }
  }
  return count;
}

// True when some member realizes pattern rank `want` on the tuple.
inline bool tuple_has_pattern(const SweepCtx& ctx, const int* tuple, int want) {
  for (int j = 0; j < ctx.m; ++j)
    if (pattern_rank_at(ctx, ctx.pos[j], tuple) == want) return true;
  return false;
}

struct ChunkStats {
  int min_count;
  int max_count;
  uint64_t shattered = 0;
  std::vector<KTuple> witnesses;
};

} // namespace

int CoverageReport::count_for(const KTuple& x) const {
  if (!counts_materialized)
    throw std::logic_error("per-tuple counts were not materialized for this sweep");
  return per_tuple_counts[rank_ktuple(n, k, x.elements.data())];
}

int count_orders(const Family& s, const KTuple& x) {
  SweepCtx ctx = make_ctx(s, x.k());
  for (int e : x.elements)
    if (e < 1 || e > s.ground())
      throw std::invalid_argument("tuple element out of range");
  return tuple_order_count(ctx, x.elements.data(), ctx.pat_count);
}

CoverageReport coverage(const Family& s, int k, const CoverageOptions& opt) {
  SweepCtx ctx = make_ctx(s, k);
  CoverageReport rep;
  rep.n = ctx.n;
  rep.k = k;
  rep.m = ctx.m;
  rep.total_tuples = binomial(ctx.n, k);
  rep.counts_materialized = rep.total_tuples <= opt.materialize_cap;
  if (rep.counts_materialized) rep.per_tuple_counts.assign(rep.total_tuples, 0);

  const int threads = resolve_threads(opt.threads);
  const auto ranges = plan_chunks(rep.total_tuples, threads, 1024);
  std::vector<ChunkStats> stats(ranges.size());
  uint16_t* counts = rep.counts_materialized ? rep.per_tuple_counts.data() : nullptr;
  const int witness_limit = std::max(opt.witness_limit, 0);

  run_chunks(ranges, threads, [&](int ci, uint64_t lo, uint64_t hi) {
    ChunkStats& st = stats[ci];
    st.min_count = ctx.pat_count + 1;
    st.max_count = 0;
    int tuple[kMaxSweepK];
    unrank_ktuple(ctx.n, k, lo, tuple);
    for (uint64_t r = lo; r < hi; ++r) {
      const int c = tuple_order_count(ctx, tuple, ctx.pat_count);
      st.min_count = std::min(st.min_count, c);
      st.max_count = std::max(st.max_count, c);
      if (c == ctx.pat_count)
        ++st.shattered;
      else if (static_cast<int>(st.witnesses.size()) < witness_limit)
        st.witnesses.push_back(KTuple(std::vector<int>(tuple, tuple + k)));
      if (counts) counts[r] = static_cast<uint16_t>(c);
      next_ktuple(ctx.n, k, tuple);
    }
  });

  rep.min_count = ctx.pat_count + 1;
  rep.max_count = 0;
  for (const auto& st : stats) {
    rep.min_count = std::min(rep.min_count, st.min_count);
    rep.max_count = std::max(rep.max_count, st.max_count);
    rep.shattered_count += st.shattered;
    for (const auto& w : st.witnesses)
      if (static_cast<int>(rep.unshattered_witnesses.size()) < witness_limit)
        rep.unshattered_witnesses.push_back(w);
  }
  if (rep.min_count > rep.max_count) rep.min_count = rep.max_count; // empty sweep guard
  return rep;
}

namespace {

// Shared scan for threshold-style properties: finds the lexicographically
// least tuple failing pred, where pred needs only the tuple buffer.
template <typename Fail>
PropertyResult least_failing(const SweepCtx& ctx, int threads, Fail&& fails) {
  const uint64_t total = binomial(ctx.n, ctx.k);
  const auto ranges = plan_chunks(total, threads, 1024);
  std::vector<std::optional<uint64_t>> found(ranges.size());
  std::atomic<int> first_failed_chunk{static_cast<int>(ranges.size())};

  run_chunks(ranges, threads, [&](int ci, uint64_t lo, uint64_t hi) {
    if (ci > first_failed_chunk.load(std::memory_order_relaxed)) return;
    int tuple[kMaxSweepK];
    unrank_ktuple(ctx.n, ctx.k, lo, tuple);
    for (uint64_t r = lo; r < hi; ++r) {
      if (fails(tuple)) {
        found[ci] = r;
        int cur = first_failed_chunk.load(std::memory_order_relaxed);
        while (ci < cur && !first_failed_chunk.compare_exchange_weak(cur, ci)) {
        }
        return;
      }
      next_ktuple(ctx.n, ctx.k, tuple);
    }
  });

  PropertyResult res;
  res.holds = true;
  for (size_t ci = 0; ci < ranges.size(); ++ci) {
    if (found[ci]) {
      std::vector<int> tuple(ctx.k);
      unrank_ktuple(ctx.n, ctx.k, *found[ci], tuple.data());
      res.holds = false;
      res.witness = KTuple(std::move(tuple));
      break;
    }
  }
  return res;
}

} // namespace

PropertyResult satisfies_partial(const Family& s, int k, int t, const CoverageOptions& opt) {
  SweepCtx ctx = make_ctx(s, k);
  if (t < 1 || t > ctx.pat_count)
    throw std::invalid_argument("threshold t must satisfy 1 <= t <= k!");
  return least_failing(ctx, resolve_threads(opt.threads),
                       [&](const int* tuple) { return tuple_order_count(ctx, tuple, t) < t; });
}

PropertyResult follows_everywhere(const Family& s, const PatternRank& r,
                                  const CoverageOptions& opt) {
  SweepCtx ctx = make_ctx(s, r.k);
  if (r.rank < 0 || r.rank >= ctx.pat_count)
    throw std::invalid_argument("pattern rank out of range");
  return least_failing(ctx, resolve_threads(opt.threads), [&](const int* tuple) {
    return !tuple_has_pattern(ctx, tuple, r.rank);
  });
}

std::vector<int> longest_monotone_subsequence(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  if (n == 0) return {};

  // Patience sorting with parent links; strict comparisons since values are
  // distinct. dir=+1 extracts increasing, dir=-1 decreasing.
  auto extract = [&](int dir) {
    std::vector<int> tails;       // value at the top of each pile, scaled by dir
    std::vector<int> tail_index;  // index of that value
    std::vector<int> prev(n, -1);
    for (int i = 0; i < n; ++i) {
      const int v = dir * values[i];
      auto it = std::lower_bound(tails.begin(), tails.end(), v);
      const size_t pile = static_cast<size_t>(it - tails.begin());
      if (pile > 0) prev[i] = tail_index[pile - 1];
      if (it == tails.end()) {
        tails.push_back(v);
        tail_index.push_back(i);
      } else {
        *it = v;
        tail_index[pile] = i;
      }
    }
    std::vector<int> out;
    for (int i = tail_index.back(); i != -1; i = prev[i]) out.push_back(values[i]);
    std::reverse(out.begin(), out.end());
    return out;
  };

  std::vector<int> inc = extract(+1);
  std::vector<int> dec = extract(-1);
  return inc.size() >= dec.size() ? inc : dec;
}

std::vector<int> es_witness(const Family& s) {
  const int n = s.ground();
  std::vector<char> in_set(n + 1, 1);
  int set_size = n;
  for (const auto& p : s.members()) {
    std::vector<int> seq;
    seq.reserve(set_size);
    for (int i = 1; i <= n; ++i) {
      const int e = p.at(i);
      if (in_set[e]) seq.push_back(e);
    }
    const std::vector<int> keep = longest_monotone_subsequence(seq);
    std::fill(in_set.begin(), in_set.end(), 0);
    for (int e : keep) in_set[e] = 1;
    set_size = static_cast<int>(keep.size());
  }
  std::vector<int> out;
  out.reserve(set_size);
  for (int e = 1; e <= n; ++e)
    if (in_set[e]) out.push_back(e);
  return out;
}

int es_witness_floor(int n, int m) {
  if (n < 2) return 0;
  const uint64_t target = static_cast<uint64_t>(n - 1);
  // 2^m-th root by checking b^(2^m) <= n-1 with overflow-safe squaring.
  auto pow_leq = [&](uint64_t b) {
    unsigned __int128 acc = b;
    for (int i = 0; i < m; ++i) {
      acc = acc * acc;
      if (acc > target) return false;
    }
    return acc <= target;
  };
  uint64_t b = 1;
  while (pow_leq(b + 1)) ++b;
  return static_cast<int>(b);
}

} // namespace shatter
