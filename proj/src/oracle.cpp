#include "shatter/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <mutex>

#include "shatter/checkers.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

namespace {

constexpr int kMaxTuples = 70; // C(8,4)
constexpr int kMaxWords = 2;   // k! <= 120 bits
constexpr int kMaxMembers = 64;
constexpr int kPollInterval = 8192;

struct Ctx {
  int n = 0, k = 0;
  int pat_count = 0, T = 0, W = 0;
  int cand_count = 0; // n!, candidate 0 is the identity
  std::vector<std::vector<int>> rows;
  std::vector<uint16_t> pat; // pat[cand * T + tuple]
  uint64_t budget = 0;
  std::atomic<uint64_t> nodes{0};
  std::atomic<bool> budget_out{false};
};

int pattern_rank_generic(const std::vector<int>& pos, const int* tuple, int k) {
  int q[8], r[8];
  for (int i = 0; i < k; ++i) q[i] = pos[tuple[i] - 1];
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

Ctx make_ctx(int n, int k, uint64_t budget) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  if (n > 8) throw std::invalid_argument("oracle search is capped at n <= 8");
  if (k > 5) throw std::invalid_argument("oracle search is capped at k <= 5");
  Ctx ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.pat_count = factorial(k);
  ctx.T = static_cast<int>(binomial(n, k));
  ctx.W = (ctx.pat_count + 63) / 64;
  ctx.cand_count = factorial(n);
  ctx.budget = budget;

  ctx.rows.reserve(ctx.cand_count);
  std::vector<int> row(n);
  for (int i = 0; i < n; ++i) row[i] = i + 1;
  do {
    ctx.rows.push_back(row);
  } while (std::next_permutation(row.begin(), row.end()));

  const std::vector<KTuple> tuples = ktuples(n, k);
  ctx.pat.resize(static_cast<size_t>(ctx.cand_count) * ctx.T);
  std::vector<int> pos(n);
  for (int c = 0; c < ctx.cand_count; ++c) {
    for (int i = 0; i < n; ++i) pos[ctx.rows[c][i] - 1] = i + 1;
    for (int j = 0; j < ctx.T; ++j)
      ctx.pat[static_cast<size_t>(c) * ctx.T + j] =
          static_cast<uint16_t>(pattern_rank_generic(pos, tuples[j].elements.data(), k));
  }
  return ctx;
}

struct State {
  uint64_t mask[kMaxTuples * kMaxWords];
  uint8_t cnt[kMaxTuples];
  int good = 0; // min: satisfied tuples; max: alive tuples
};

State empty_state() {
  State s;
  std::memset(s.mask, 0, sizeof(s.mask));
  std::memset(s.cnt, 0, sizeof(s.cnt));
  s.good = 0;
  return s;
}

// Adds candidate `cand`. Feasible iff no tuple needs more new orders than the
// remaining slots can provide; good counts tuples already at the threshold.
inline bool extend_min(const Ctx& ctx, const State& in, State& out, int cand, int t,
                       int slots_after) {
  std::memcpy(out.mask, in.mask, static_cast<size_t>(ctx.T) * ctx.W * sizeof(uint64_t));
  std::memcpy(out.cnt, in.cnt, ctx.T);
  const uint16_t* row = &ctx.pat[static_cast<size_t>(cand) * ctx.T];
  int satisfied = 0;
  for (int j = 0; j < ctx.T; ++j) {
    const int r = row[j];
    uint64_t& w = out.mask[j * ctx.W + (r >> 6)];
    const uint64_t bit = 1ULL << (r & 63);
    int c = out.cnt[j];
    if (!(w & bit)) {
      w |= bit;
      out.cnt[j] = static_cast<uint8_t>(++c);
    }
    if (c >= t)
      ++satisfied;
    else if (t - c > slots_after)
      return false;
  }
  out.good = satisfied;
  return true;
}

// Adds candidate `cand`; good counts tuples that can still reach all k!
// orders within the remaining slots (at slots_after == 0 this is the number
// of totally shattered tuples).
inline int extend_max(const Ctx& ctx, const State& in, State& out, int cand,
                      int slots_after) {
  std::memcpy(out.mask, in.mask, static_cast<size_t>(ctx.T) * ctx.W * sizeof(uint64_t));
  std::memcpy(out.cnt, in.cnt, ctx.T);
  const uint16_t* row = &ctx.pat[static_cast<size_t>(cand) * ctx.T];
  int alive = 0;
  for (int j = 0; j < ctx.T; ++j) {
    const int r = row[j];
    uint64_t& w = out.mask[j * ctx.W + (r >> 6)];
    const uint64_t bit = 1ULL << (r & 63);
    int c = out.cnt[j];
    if (!(w & bit)) {
      w |= bit;
      out.cnt[j] = static_cast<uint8_t>(++c);
    }
    if (ctx.pat_count - c <= slots_after) ++alive;
  }
  out.good = alive;
  return alive;
}

// Flushes local node counts into the shared counter and polls stop signals.
struct NodeMeter {
  Ctx& ctx;
  uint64_t local = 0;
  int poll = kPollInterval;

  explicit NodeMeter(Ctx& c) : ctx(c) {}
  ~NodeMeter() { flush(); }

  void flush() {
    if (local) {
      ctx.nodes.fetch_add(local, std::memory_order_relaxed);
      local = 0;
      if (ctx.nodes.load(std::memory_order_relaxed) >= ctx.budget)
        ctx.budget_out.store(true, std::memory_order_relaxed);
    }
  }
  // Returns false when the search must unwind.
  template <typename ExtraStop>
  bool tick(ExtraStop&& stopped) {
    ++local;
    if (--poll <= 0) {
      poll = kPollInterval;
      flush();
      if (ctx.budget_out.load(std::memory_order_relaxed)) return false;
      if (stopped()) return false;
    }
    return true;
  }
};

// ---- minimum family size: ordered branch scan per level -------------------

struct MinLevel {
  bool found = false;
  bool aborted = false;
  std::vector<int> members;
};

struct MinWorker {
  Ctx& ctx;
  int m, t;
  int my_branch;
  std::atomic<int>& committed;
  NodeMeter meter;
  int stack[kMaxMembers];
  bool aborted = false;

  MinWorker(Ctx& c, int m_, int t_, int branch, std::atomic<int>& comm)
      : ctx(c), m(m_), t(t_), my_branch(branch), committed(comm), meter(c) {}

  bool dfs(const State& st, int depth, int last) {
    if (depth == m) return true; // feasibility at slots_after==0 is success
    const int slots = m - depth;
    State child;
    for (int c = last + 1; c <= ctx.cand_count - slots; ++c) {
      if (!meter.tick([&] {
            return committed.load(std::memory_order_relaxed) < my_branch;
          })) {
        aborted = true;
        return false;
      }
      if (!extend_min(ctx, st, child, c, t, slots - 1)) continue;
      stack[depth] = c;
      if (dfs(child, depth + 1, c)) return true;
      if (aborted) return false;
    }
    return false;
  }
};

MinLevel scan_min_level(Ctx& ctx, int m, int t, int threads) {
  MinLevel out;
  const State root0 = empty_state();
  State root;
  if (!extend_min(ctx, root0, root, 0, t, m - 1)) return out; // identity infeasible

  if (m == 1) {
    out.found = true;
    out.members = {0};
    return out;
  }

  const int branch_max = ctx.cand_count - (m - 1); // last viable second member
  std::vector<int> branches;
  for (int c = 1; c <= branch_max; ++c) branches.push_back(c);
  std::atomic<int> committed{static_cast<int>(branches.size())};
  std::atomic<int> next{0};
  std::atomic<bool> any_aborted{false};
  std::vector<std::vector<int>> results(branches.size());

  auto worker = [&]() {
    State child;
    while (true) {
      const int b = next.fetch_add(1);
      if (b >= static_cast<int>(branches.size())) break;
      if (b > committed.load(std::memory_order_relaxed)) continue;
      if (ctx.budget_out.load(std::memory_order_relaxed)) {
        any_aborted.store(true);
        break;
      }
      MinWorker w(ctx, m, t, b, committed);
      if (!w.meter.tick([] { return false; })) {
        any_aborted.store(true);
        break;
      }
      if (!extend_min(ctx, root, child, branches[b], t, m - 2)) continue;
      w.stack[0] = 0;
      w.stack[1] = branches[b];
      if (w.dfs(child, 2, branches[b])) {
        int cur = committed.load(std::memory_order_relaxed);
        while (b < cur && !committed.compare_exchange_weak(cur, b)) {
        }
        results[b].assign(w.stack, w.stack + m);
      } else if (w.aborted && !ctx.budget_out.load(std::memory_order_relaxed)) {
        // overtaken by an earlier committed branch; nothing to record
      } else if (w.aborted) {
        any_aborted.store(true);
      }
    }
  };

  const int workers = std::min(threads, static_cast<int>(branches.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const int c = committed.load();
  if (c < static_cast<int>(branches.size())) {
    out.found = true;
    out.members = results[c];
  }
  out.aborted = any_aborted.load() || ctx.budget_out.load();
  return out;
}

// ---- maximum shattered count: value pass, then canonical witness ----------

struct MaxShared {
  std::atomic<int> best{-1};
  std::atomic<bool> hit_ceiling{false};
  std::mutex witness_mu;
  std::vector<int> witness;
};

struct MaxWorker {
  Ctx& ctx;
  int m;
  MaxShared& shared;
  NodeMeter meter;
  int stack[kMaxMembers];
  bool aborted = false;

  MaxWorker(Ctx& c, int m_, MaxShared& s) : ctx(c), m(m_), shared(s), meter(c) {}

  void commit(int value, int depth_filled) {
    int cur = shared.best.load(std::memory_order_relaxed);
    while (value > cur && !shared.best.compare_exchange_weak(cur, value)) {
    }
    if (value > cur) {
      std::lock_guard<std::mutex> lock(shared.witness_mu);
      if (value >= shared.best.load()) shared.witness.assign(stack, stack + depth_filled);
      if (value == ctx.T) shared.hit_ceiling.store(true);
    }
  }

  void dfs(const State& st, int depth, int last) {
    if (depth == m) {
      commit(st.good, depth);
      return;
    }
    const int slots = m - depth;
    State child;
    for (int c = last + 1; c <= ctx.cand_count - slots; ++c) {
      if (!meter.tick([&] { return shared.hit_ceiling.load(std::memory_order_relaxed); })) {
        aborted = true;
        return;
      }
      const int alive = extend_max(ctx, st, child, c, slots - 1);
      if (alive <= shared.best.load(std::memory_order_relaxed)) continue;
      stack[depth] = c;
      dfs(child, depth + 1, c);
      if (aborted) return;
    }
  }
};

// Canonical pass: first leaf in lexicographic order achieving the optimum.
struct MaxCanonWorker {
  Ctx& ctx;
  int m, target;
  int my_branch;
  std::atomic<int>& committed;
  NodeMeter meter;
  int stack[kMaxMembers];
  bool aborted = false;

  MaxCanonWorker(Ctx& c, int m_, int target_, int branch, std::atomic<int>& comm)
      : ctx(c), m(m_), target(target_), my_branch(branch), committed(comm), meter(c) {}

  bool dfs(const State& st, int depth, int last) {
    if (depth == m) return st.good >= target;
    const int slots = m - depth;
    State child;
    for (int c = last + 1; c <= ctx.cand_count - slots; ++c) {
      if (!meter.tick([&] {
            return committed.load(std::memory_order_relaxed) < my_branch;
          })) {
        aborted = true;
        return false;
      }
      const int alive = extend_max(ctx, st, child, c, slots - 1);
      if (alive < target) continue;
      stack[depth] = c;
      if (dfs(child, depth + 1, c)) return true;
      if (aborted) return false;
    }
    return false;
  }
};

struct CanonOutcome {
  bool found = false;
  bool aborted = false;
  std::vector<int> members;
};

CanonOutcome scan_max_canonical(Ctx& ctx, int m, int target, int threads) {
  CanonOutcome out;
  const State root0 = empty_state();
  State root;
  extend_max(ctx, root0, root, 0, m - 1);
  if (m == 1) {
    out.found = root.good >= target;
    out.members = {0};
    return out;
  }
  const int branch_max = ctx.cand_count - (m - 1);
  std::vector<int> branches;
  for (int c = 1; c <= branch_max; ++c) branches.push_back(c);
  std::atomic<int> committed{static_cast<int>(branches.size())};
  std::atomic<int> next{0};
  std::atomic<bool> any_aborted{false};
  std::vector<std::vector<int>> results(branches.size());

  auto worker = [&]() {
    State child;
    while (true) {
      const int b = next.fetch_add(1);
      if (b >= static_cast<int>(branches.size())) break;
      if (b > committed.load(std::memory_order_relaxed)) continue;
      if (ctx.budget_out.load(std::memory_order_relaxed)) {
        any_aborted.store(true);
        break;
      }
      MaxCanonWorker w(ctx, m, target, b, committed);
      const int alive = extend_max(ctx, root, child, branches[b], m - 2);
      if (alive < target) continue;
      w.stack[0] = 0;
      w.stack[1] = branches[b];
      if (w.dfs(child, 2, branches[b])) {
        int cur = committed.load(std::memory_order_relaxed);
        while (b < cur && !committed.compare_exchange_weak(cur, b)) {
        }
        results[b].assign(w.stack, w.stack + m);
      } else if (w.aborted && ctx.budget_out.load(std::memory_order_relaxed)) {
        any_aborted.store(true);
      }
    }
  };

  const int workers = std::min(threads, static_cast<int>(branches.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const int c = committed.load();
  if (c < static_cast<int>(branches.size())) {
    out.found = true;
    out.members = results[c];
  }
  out.aborted = any_aborted.load() || ctx.budget_out.load();
  return out;
}

// ---- estimates -------------------------------------------------------------

double raw_estimate(int cands, int picks) {
  double r = 1;
  for (int i = 1; i <= picks; ++i) {
    r *= static_cast<double>(cands - picks + i) / i;
    if (r > 1e30) return 1e30;
  }
  return r;
}

// Width model for forced zero-waste searches (every member must realize a
// new order on every tuple): layer d holds roughly cands * ((p-d)/p)^T / d
// times the previous layer.
double zero_waste_estimate(int cands, int picks, int patc, int T) {
  double total = 1, layer = 1;
  for (int d = 1; d <= picks; ++d) {
    const double width =
        cands * std::pow(static_cast<double>(patc - std::min(d, patc)) / patc, T);
    layer *= std::max(width / d, 1e-12);
    total += layer;
    if (total > 1e30) return 1e30;
  }
  return std::max(total, 1.0);
}

Family family_from_members(const Ctx& ctx, const std::vector<int>& members) {
  std::vector<Permutation> perms;
  perms.reserve(members.size());
  for (int c : members) perms.push_back(Permutation(ctx.rows[c]));
  return Family(ctx.n, std::move(perms));
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

SearchReport min_family_size(int n, int k, int t, const SearchOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (t < 1) throw std::invalid_argument("threshold t must be >= 1");
  Ctx ctx = make_ctx(n, k, opt.node_budget);
  if (t > ctx.pat_count) throw std::invalid_argument("threshold t must be <= k!");

  SearchReport rep;
  rep.problem = {SearchProblem::Type::min_family_size, n, k, t, 0};

  // t distinct orders need at least t members.
  const double first_est =
      zero_waste_estimate(ctx.cand_count - 1, t - 1, ctx.pat_count, ctx.T);
  if (first_est > static_cast<double>(opt.node_budget))
    throw infeasible_error("search space estimate " + std::to_string(first_est) +
                               " nodes exceeds budget " + std::to_string(opt.node_budget),
                           first_est);

  const int threads = resolve_threads(opt.threads);
  for (int m = t; m <= ctx.cand_count; ++m) {
    if (m > kMaxMembers)
      throw std::invalid_argument("family size exceeds engine cap of 64 members");
    const double est = m == t
                           ? first_est
                           : raw_estimate(ctx.cand_count - 1, m - 1);
    const uint64_t used = ctx.nodes.load();
    if (m > t && est > static_cast<double>(opt.node_budget - std::min(opt.node_budget, used))) {
      // Cannot certify this level within budget; stop with what is known.
      rep.nodes_explored = used;
      rep.proof_of_optimality = false;
      rep.wall_seconds = elapsed_since(t0);
      return rep;
    }
    MinLevel level = scan_min_level(ctx, m, t, threads);
    if (level.found) {
      rep.optimum = static_cast<uint64_t>(m);
      rep.witness = family_from_members(ctx, level.members);
      rep.proof_of_optimality = !level.aborted;
      rep.nodes_explored = ctx.nodes.load();
      rep.wall_seconds = elapsed_since(t0);
      if (!satisfies_partial(*rep.witness, k, t).holds)
        throw std::logic_error("search witness failed checker re-verification");
      return rep;
    }
    if (level.aborted) {
      rep.nodes_explored = ctx.nodes.load();
      rep.proof_of_optimality = false;
      rep.wall_seconds = elapsed_since(t0);
      return rep;
    }
  }
  throw std::logic_error("exhausted all family sizes without a witness");
}

SearchReport max_shattered(int n, int k, int m, const SearchOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (m < 1) throw std::invalid_argument("family size m must be >= 1");
  Ctx ctx = make_ctx(n, k, opt.node_budget);
  if (m > ctx.cand_count) throw std::invalid_argument("family size m exceeds n!");
  if (m > kMaxMembers) throw std::invalid_argument("family size exceeds engine cap of 64 members");

  SearchReport rep;
  rep.problem = {SearchProblem::Type::max_shattered, n, k, 0, m};
  rep.total_tuples = binomial(n, k);

  // Fewer than k! permutations cannot shatter any tuple; the canonical
  // witness is the lexicographically least m-family.
  if (m < ctx.pat_count) {
    std::vector<int> members(m);
    for (int i = 0; i < m; ++i) members[i] = i;
    rep.optimum = 0;
    rep.witness = family_from_members(ctx, members);
    rep.proof_of_optimality = true;
    rep.wall_seconds = elapsed_since(t0);
    return rep;
  }

  double est = raw_estimate(ctx.cand_count - 1, m - 1);
  if (m >= ctx.pat_count && k == n - 1)
    est = std::min(est, zero_waste_estimate(ctx.cand_count - 1, m - 1, ctx.pat_count, ctx.T));
  if (est > static_cast<double>(opt.node_budget))
    throw infeasible_error("search space estimate " + std::to_string(est) +
                               " nodes exceeds budget " + std::to_string(opt.node_budget),
                           est);

  const int threads = resolve_threads(opt.threads);

  // Value pass.
  MaxShared shared;
  {
    const State root0 = empty_state();
    State root;
    extend_max(ctx, root0, root, 0, m - 1);
    if (m == 1) {
      shared.best.store(root.good);
      shared.witness = {0};
    } else {
      const int branch_max = ctx.cand_count - (m - 1);
      std::atomic<int> next{1};
      auto worker = [&]() {
        State child;
        while (true) {
          const int c1 = next.fetch_add(1);
          if (c1 > branch_max) break;
          if (ctx.budget_out.load(std::memory_order_relaxed) ||
              shared.hit_ceiling.load(std::memory_order_relaxed))
            break;
          MaxWorker w(ctx, m, shared);
          const int alive = extend_max(ctx, root, child, c1, m - 2);
          if (alive <= shared.best.load(std::memory_order_relaxed)) continue;
          w.stack[0] = 0;
          w.stack[1] = c1;
          w.dfs(child, 2, c1);
        }
      };
      const int workers = std::min(threads, branch_max);
      std::vector<std::thread> pool;
      for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
    }
  }

  if (ctx.budget_out.load()) {
    rep.optimum = shared.best.load() >= 0
                      ? std::optional<uint64_t>(static_cast<uint64_t>(shared.best.load()))
                      : std::nullopt;
    if (!shared.witness.empty()) rep.witness = family_from_members(ctx, shared.witness);
    rep.proof_of_optimality = false;
    rep.nodes_explored = ctx.nodes.load();
    rep.wall_seconds = elapsed_since(t0);
    return rep;
  }

  const int optimum = shared.best.load();

  // Canonical witness pass.
  CanonOutcome canon = scan_max_canonical(ctx, m, optimum, threads);
  rep.optimum = static_cast<uint64_t>(optimum);
  rep.nodes_explored = ctx.nodes.load();
  rep.wall_seconds = elapsed_since(t0);
  if (canon.found) {
    rep.witness = family_from_members(ctx, canon.members);
    rep.proof_of_optimality = !canon.aborted;
  } else {
    // Budget ran out before the canonical pass could finish.
    if (!shared.witness.empty()) rep.witness = family_from_members(ctx, shared.witness);
    rep.proof_of_optimality = false;
  }
  if (rep.witness) {
    const CoverageReport cov = coverage(*rep.witness, k);
    if (rep.proof_of_optimality && cov.shattered_count != *rep.optimum)
      throw std::logic_error("search witness failed checker re-verification");
  }
  return rep;
}

ProbeReport monotonicity_probe(int k, int m, const std::vector<int>& ns,
                               const SearchOptions& opt) {
  ProbeReport rep;
  rep.k = k;
  rep.m = m;
  rep.complete = true;
  for (int n : ns) {
    ProbeEntry e;
    e.n = n;
    e.total = binomial(n, k);
    SearchReport sr = max_shattered(n, k, m, opt);
    e.shattered = sr.optimum.value_or(0);
    e.proof_of_optimality = sr.proof_of_optimality;
    rep.complete = rep.complete && sr.proof_of_optimality;
    rep.entries.push_back(e);
  }
  rep.non_increasing = true;
  for (size_t i = 1; i < rep.entries.size(); ++i) {
    const auto& a = rep.entries[i - 1];
    const auto& b = rep.entries[i];
    // a.shattered/a.total >= b.shattered/b.total, exactly.
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(a.shattered) * b.total;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(b.shattered) * a.total;
    if (lhs < rhs) rep.non_increasing = false;
  }
  return rep;
}

AppendixReplayReport appendix_replay_f356(const Family& perfect4) {
  if (perfect4.ground() != 4 || perfect4.size() != 6)
    throw std::invalid_argument("replay expects a 6-member family on [4]");
  if (coverage(perfect4, 3).min_count != 6)
    throw std::invalid_argument("replay expects a perfect family on [4]");

  // Pattern of each of the 10 triples of [5], for each member and each
  // insertion position of element 5.
  const std::vector<KTuple> triples = ktuples(5, 3);
  uint8_t pat[6][5][10];
  for (int i = 0; i < 6; ++i) {
    const auto& base_row = perfect4.member(i).order();
    for (int p = 0; p < 5; ++p) {
      std::vector<int> row;
      row.reserve(5);
      for (int idx = 0; idx < 5; ++idx) {
        if (idx == p) row.push_back(5);
        if (idx < 4) row.push_back(base_row[idx]);
      }
      const Permutation perm(row);
      for (int j = 0; j < 10; ++j)
        pat[i][p][j] = static_cast<uint8_t>(pattern_of(perm, triples[j]).rank);
    }
  }

  AppendixReplayReport rep;
  rep.min_unshattered = 11;
  int pos[6] = {0, 0, 0, 0, 0, 0};
  while (true) {
    int unshattered = 0;
    for (int j = 0; j < 10; ++j) {
      uint8_t mask = 0;
      for (int i = 0; i < 6; ++i) mask |= static_cast<uint8_t>(1u << pat[i][pos[i]][j]);
      if (mask != 0x3F) ++unshattered;
    }
    rep.min_unshattered = std::min(rep.min_unshattered, unshattered);
    ++rep.completions;
    int i = 5;
    while (i >= 0 && pos[i] == 4) pos[i--] = 0;
    if (i < 0) break;
    ++pos[i];
  }
  rep.confirmed = rep.min_unshattered >= 2;
  return rep;
}

} // namespace shatter
