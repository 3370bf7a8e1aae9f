#include "shatter/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace shatter {

Permutation::Permutation(std::vector<int> one_line) : order_(std::move(one_line)) {
  const int n = static_cast<int>(order_.size());
  if (n < 1) throw std::invalid_argument("permutation must have n >= 1");
  pos_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const int v = order_[i];
    if (v < 1 || v > n)
      throw std::invalid_argument("permutation value " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
    if (pos_[v - 1] != 0)
      throw std::invalid_argument("permutation repeats value " + std::to_string(v));
    pos_[v - 1] = i + 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

int Permutation::at(int i) const {
  if (i < 1 || i > size()) throw std::invalid_argument("position out of range");
  return order_[i - 1];
}

int Permutation::position(int a) const {
  if (a < 1 || a > size())
    throw std::invalid_argument("element " + std::to_string(a) + " out of range 1.." +
                                std::to_string(size()));
  return pos_[a - 1];
}

Permutation Permutation::reversed() const {
  std::vector<int> v(order_.rbegin(), order_.rend());
  return Permutation(std::move(v));
}

KTuple::KTuple(std::vector<int> elems) : elements(std::move(elems)) {
  for (size_t i = 0; i + 1 < elements.size(); ++i)
    if (elements[i] >= elements[i + 1])
      throw std::invalid_argument("k-tuple must be strictly increasing");
  if (elements.empty()) throw std::invalid_argument("k-tuple must be non-empty");
}

Family::Family(int n, std::vector<Permutation> members)
    : n_(n), members_(std::move(members)) {
  if (n_ < 1) throw std::invalid_argument("family ground size must be >= 1");
  for (const auto& p : members_)
    if (p.size() != n_)
      throw std::invalid_argument("family member ground size mismatch");
}

int factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial argument out of range");
  int64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  if (r > INT32_MAX) throw std::overflow_error("factorial does not fit in int");
  return static_cast<int>(r);
}

uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0) throw std::invalid_argument("binomial arguments must be non-negative");
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial does not fit in uint64");
  }
  return static_cast<uint64_t>(r);
}

PatternRank rank_pattern(const std::vector<int>& pattern) {
  const int k = static_cast<int>(pattern.size());
  // Validate before ranking.
  Permutation check(pattern);
  int rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < k; ++j)
      if (pattern[j] < pattern[i]) ++smaller_after;
    rank = rank * (k - i) + smaller_after;
  }
  return PatternRank{k, rank};
}

std::vector<int> unrank_pattern(int k, int rank) {
  if (k < 1) throw std::invalid_argument("pattern length must be >= 1");
  const int kf = factorial(k);
  if (rank < 0 || rank >= kf) throw std::invalid_argument("pattern rank out of range");
  std::vector<int> digits(k, 0);
  for (int i = k - 1; i >= 0; --i) {
    digits[i] = rank % (k - i);
    rank /= (k - i);
  }
  std::vector<int> pool(k);
  for (int i = 0; i < k; ++i) pool[i] = i + 1;
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) {
    out[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return out;
}

PatternRank pattern_of(const Permutation& p, const KTuple& x) {
  const int k = x.k();
  if (k > p.size()) throw std::invalid_argument("tuple larger than ground");
  std::vector<int> q(k);
  for (int i = 0; i < k; ++i) q[i] = p.position(x.elements[i]);
  // r[rho_i] = i+1 where rho_i is the rank of q[i] among all q's.
  std::vector<int> r(k);
  for (int i = 0; i < k; ++i) {
    int rho = 0;
    for (int j = 0; j < k; ++j)
      if (q[j] < q[i]) ++rho;
    r[rho] = i + 1;
  }
  return rank_pattern(r);
}

std::vector<int> reversed_pattern(const std::vector<int>& pattern) {
  return std::vector<int>(pattern.rbegin(), pattern.rend());
}

void first_ktuple(int k, int* out) {
  for (int i = 0; i < k; ++i) out[i] = i + 1;
}

bool next_ktuple(int n, int k, int* io) {
  int i = k - 1;
  while (i >= 0 && io[i] == n - (k - 1 - i)) --i;
  if (i < 0) return false;
  ++io[i];
  for (int j = i + 1; j < k; ++j) io[j] = io[j - 1] + 1;
  return true;
}

void unrank_ktuple(int n, int k, uint64_t rank, int* out) {
  int a = 1;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const uint64_t block = binomial(n - a, k - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++a;
    }
    out[i] = a;
    ++a;
  }
}

uint64_t rank_ktuple(int n, int k, const int* tuple) {
  uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int a = prev + 1; a < tuple[i]; ++a) rank += binomial(n - a, k - 1 - i);
    prev = tuple[i];
  }
  return rank;
}

std::vector<KTuple> ktuples(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("ktuples requires 1 <= k <= n");
  const uint64_t total = binomial(n, k);
  if (total > 10'000'000ULL)
    throw std::invalid_argument("ktuples would materialize more than 10^7 tuples");
  std::vector<KTuple> out;
  out.reserve(total);
  std::vector<int> buf(k);
  first_ktuple(k, buf.data());
  do {
    out.push_back(KTuple(buf));
  } while (next_ktuple(n, k, buf.data()));
  return out;
}

parse_error::parse_error(int line_num, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_num) + ": " + message),
      line(line_num) {}

Family parse_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error(1, "missing header line");
  int n = 0, m = 0;
  {
    std::istringstream hs(line);
    std::string tok_n, tok_m, extra;
    if (!(hs >> tok_n >> tok_m) || (hs >> extra))
      throw parse_error(1, "header must be 'n=<n> m=<m>'");
    if (tok_n.rfind("n=", 0) != 0 || tok_m.rfind("m=", 0) != 0)
      throw parse_error(1, "header must be 'n=<n> m=<m>'");
    try {
      n = std::stoi(tok_n.substr(2));
      m = std::stoi(tok_m.substr(2));
    } catch (const std::exception&) {
      throw parse_error(1, "header must be 'n=<n> m=<m>'");
    }
  }
  if (n < 1) throw parse_error(1, "n must be >= 1");
  if (m < 0) throw parse_error(1, "m must be >= 0");

  std::vector<Permutation> members;
  members.reserve(m);
  for (int row = 0; row < m; ++row) {
    const int line_num = row + 2;
    if (!std::getline(in, line))
      throw parse_error(line_num, "expected " + std::to_string(m) + " permutation lines");
    std::istringstream ls(line);
    std::vector<int> vals;
    vals.reserve(n);
    int v;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof()) throw parse_error(line_num, "non-integer token");
    if (static_cast<int>(vals.size()) != n)
      throw parse_error(line_num, "expected " + std::to_string(n) + " values, got " +
                                      std::to_string(vals.size()));
    std::vector<char> seen(n, 0);
    for (int x : vals) {
      if (x < 1 || x > n)
        throw parse_error(line_num, "value " + std::to_string(x) + " out of range 1.." +
                                        std::to_string(n));
      if (seen[x - 1]) throw parse_error(line_num, "duplicate value " + std::to_string(x));
      seen[x - 1] = 1;
    }
    members.push_back(Permutation(std::move(vals)));
  }
  return Family(n, std::move(members));
}

Family parse_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file: " + path);
  return parse_family(in);
}

void write_family(std::ostream& out, const Family& fam) {
  out << "n=" << fam.ground() << " m=" << fam.size() << "\n";
  for (const auto& p : fam.members()) {
    const auto& ord = p.order();
    for (size_t i = 0; i < ord.size(); ++i) {
      if (i) out << ' ';
      out << ord[i];
    }
    out << "\n";
  }
}

void write_family_file(const std::string& path, const Family& fam) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_family(out, fam);
}

std::string family_to_string(const Family& fam) {
  std::ostringstream os;
  write_family(os, fam);
  return os.str();
}

} // namespace shatter
