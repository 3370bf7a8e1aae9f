// Command-line front end: constructions, property verification, exact
// search, fraction measurement, separating systems, and the monotonicity
// probe. Exit codes are a stable contract:
//   0 ok / 1 property false / 2 usage or input error /
//   3 internal verification failure / 4 node budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shatter/checkers.hpp"
#include "shatter/constructions.hpp"
#include "shatter/json_io.hpp"
#include "shatter/oracle.hpp"
#include "shatter/separators.hpp"

namespace {

using nlohmann::ordered_json;
using namespace shatter;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;
constexpr int kExitBudget = 4;

struct GlobalOpts {
  int threads = 0;
  uint64_t node_budget = 100'000'000'000ULL;
  uint64_t coverage_cap = 10'000'000;
  int witnesses = 10;
  bool deterministic = false;
};

void apply_env_threads(GlobalOpts& g) {
  if (const char* env = std::getenv("SHATTER_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) g.threads = v;
    } catch (const std::exception&) {
    }
  }
  if (g.deterministic) g.threads = 1;
}

CoverageOptions coverage_opts(const GlobalOpts& g) {
  CoverageOptions opt;
  opt.threads = g.threads;
  opt.materialize_cap = g.coverage_cap;
  opt.witness_limit = g.witnesses;
  return opt;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::vector<int> parse_pattern_arg(const std::string& s) {
  std::vector<int> vals;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) {
        vals.push_back(std::stoi(cur));
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  return vals;
}

int run_construct(const GlobalOpts& g, const std::string& kind, int k, int r, int n,
                  uint64_t big_n, const std::string& base_path, const std::string& out_path,
                  std::string trace_path, bool no_verify) {
  Family family = q34(); // placeholder, reassigned below
  ConstructionTrace trace;
  std::optional<uint64_t> fractional_guarantee;

  if (kind == "q34") {
    family = q34();
    trace.recipe = "q34";
    trace.guarantee = {ClaimedGuarantee::Kind::total, 3, 0, 0};
  } else if (kind == "perfect") {
    Construction c = perfect_family(k);
    family = std::move(c.family);
    trace = std::move(c.trace);
  } else if (kind == "little") {
    if (base_path.empty()) throw std::invalid_argument("little requires --base");
    Construction c = little_construction(parse_family_file(base_path));
    family = std::move(c.family);
    trace = std::move(c.trace);
  } else if (kind == "kcube") {
    if (base_path.empty()) throw std::invalid_argument("kcube requires --base");
    Construction c = kcube_step(parse_family_file(base_path), n, k);
    family = std::move(c.family);
    trace = std::move(c.trace);
  } else if (kind == "shatter") {
    Construction c = shatter_family(k, big_n);
    family = std::move(c.family);
    trace = std::move(c.trace);
  } else if (kind == "fractional") {
    FractionalConstruction c = fractional_family(r);
    family = std::move(c.family);
    trace = std::move(c.trace);
    fractional_guarantee = c.guaranteed_shattered;
  } else {
    throw std::invalid_argument("unknown construction kind: " + kind);
  }

  if (!no_verify && !verify_guarantee(family, trace.guarantee, g.threads)) {
    std::cerr << "error: construction failed its own guarantee check; nothing written\n";
    return kExitInternal;
  }

  write_family_file(out_path, family);
  if (trace_path.empty()) trace_path = out_path + ".trace.json";
  ordered_json tj = trace_to_json(trace);
  if (fractional_guarantee) tj["claimed_guarantee"]["total_tuples"] = binomial(family.ground(), 3);
  tj["verified"] = !no_verify;
  write_text(trace_path, tj.dump(2) + "\n");
  std::cout << "wrote " << out_path << " (n=" << family.ground() << " m=" << family.size()
            << ") and " << trace_path << "\n";
  return kExitOk;
}

int run_verify(const GlobalOpts& g, const std::string& path, int k, const std::string& mode,
               int t, const std::string& pattern_arg) {
  const Family fam = parse_family_file(path);
  const CoverageOptions opt = coverage_opts(g);

  if (mode == "total") {
    const CoverageReport rep = coverage(fam, k, opt);
    ordered_json j = coverage_to_json(rep, g.witnesses);
    j["mode"] = "total";
    j["holds"] = rep.min_count == factorial(k);
    emit(j);
    return rep.min_count == factorial(k) ? kExitOk : kExitPropertyFalse;
  }
  if (mode == "partial") {
    if (t < 1) throw std::invalid_argument("partial mode requires --t");
    const PropertyResult res = satisfies_partial(fam, k, t, opt);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = "partial";
    j["n"] = fam.ground();
    j["k"] = k;
    j["m"] = fam.size();
    j["t"] = t;
    j["holds"] = res.holds;
    if (res.witness)
      j["witness"] = res.witness->elements;
    else
      j["witness"] = nullptr;
    emit(j);
    return res.holds ? kExitOk : kExitPropertyFalse;
  }
  if (mode == "fraction") {
    const CoverageReport rep = coverage(fam, k, opt);
    ordered_json j = coverage_to_json(rep, g.witnesses);
    j["mode"] = "fraction";
    j["fraction"] =
        rep.total_tuples ? static_cast<double>(rep.shattered_count) / rep.total_tuples : 0.0;
    emit(j);
    return kExitOk;
  }
  if (mode == "pattern") {
    if (pattern_arg.empty()) throw std::invalid_argument("pattern mode requires --pattern");
    const std::vector<int> pat = parse_pattern_arg(pattern_arg);
    if (static_cast<int>(pat.size()) != k)
      throw std::invalid_argument("pattern length must equal k");
    const PatternRank r = rank_pattern(pat);
    const PropertyResult res = follows_everywhere(fam, r, opt);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = "pattern";
    j["n"] = fam.ground();
    j["k"] = k;
    j["m"] = fam.size();
    j["pattern"] = pat;
    j["holds"] = res.holds;
    if (res.witness)
      j["witness"] = res.witness->elements;
    else
      j["witness"] = nullptr;
    emit(j);
    return res.holds ? kExitOk : kExitPropertyFalse;
  }
  throw std::invalid_argument("unknown verify mode: " + mode);
}

int run_search(const GlobalOpts& g, const std::string& which, int n, int k, int t, int m) {
  SearchOptions opt;
  opt.threads = g.threads;
  opt.node_budget = g.node_budget;
  SearchReport rep;
  if (which == "min") {
    if (t < 1) throw std::invalid_argument("search min requires -t");
    rep = min_family_size(n, k, t, opt);
  } else if (which == "max") {
    if (m < 1) throw std::invalid_argument("search max requires -m");
    rep = max_shattered(n, k, m, opt);
  } else {
    throw std::invalid_argument("search problem must be min or max");
  }
  emit(search_report_to_json(rep, !g.deterministic));
  return rep.proof_of_optimality ? kExitOk : kExitBudget;
}

int run_fraction(const GlobalOpts& g, const std::string& path, int k) {
  const Family fam = parse_family_file(path);
  const CoverageReport rep = coverage(fam, k, coverage_opts(g));
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = fam.ground();
  j["k"] = k;
  j["m"] = fam.size();
  j["shattered"] = rep.shattered_count;
  j["total"] = rep.total_tuples;
  j["fraction"] =
      rep.total_tuples ? static_cast<double>(rep.shattered_count) / rep.total_tuples : 0.0;
  emit(j);
  return kExitOk;
}

int run_separators(const GlobalOpts& g, const std::string& kind, int n,
                   const std::string& out_path) {
  PartitionSystem sys;
  bool ordered = false;
  if (kind == "binary") {
    sys = binary_splits(n);
  } else if (kind == "ordered") {
    sys = separating_system(n);
    ordered = true;
  } else {
    throw std::invalid_argument("separators kind must be binary or ordered");
  }
  const SeparationResult res = verify_separating(sys, ordered, g.threads);
  if (!res.holds) {
    std::cerr << "error: emitted system failed its separation check\n";
    return kExitInternal;
  }
  const ordered_json j = partition_system_to_json(sys, kind, true);
  if (out_path.empty())
    emit(j);
  else
    write_text(out_path, j.dump(2) + "\n");
  return kExitOk;
}

int run_probe(const GlobalOpts& g, int k, int m, int n_from, int n_to) {
  if (n_from > n_to) throw std::invalid_argument("probe range is empty");
  SearchOptions opt;
  opt.threads = g.threads;
  opt.node_budget = g.node_budget;
  std::vector<int> ns;
  for (int n = n_from; n <= n_to; ++n) ns.push_back(n);
  const ProbeReport rep = monotonicity_probe(k, m, ns, opt);
  emit(probe_report_to_json(rep));
  if (!rep.complete) return kExitBudget;
  return rep.non_increasing ? kExitOk : kExitPropertyFalse;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"shatter: build, verify, and search order-shattering permutation families"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--node-budget", g.node_budget, "search node budget");
  app.add_option("--coverage-cap", g.coverage_cap, "per-tuple count materialization cap");
  app.add_option("--witnesses", g.witnesses, "witness tuples included in reports");
  app.add_flag("--deterministic", g.deterministic,
               "single worker, no wall times: byte-identical output");

  auto* c_construct = app.add_subcommand("construct", "emit a family file plus trace");
  std::string kind, base_path, out_path, trace_path;
  int ck = 3, cr = 1, cn = 2;
  uint64_t cN = 8;
  bool no_verify = false;
  c_construct->add_option("kind", kind, "q34|perfect|little|kcube|shatter|fractional")
      ->required();
  c_construct->add_option("--k", ck, "tuple size / perfect family order");
  c_construct->add_option("--r", cr, "fractional iteration depth");
  c_construct->add_option("--n", cn, "lattice side length");
  c_construct->add_option("--N", cN, "target ground size");
  c_construct->add_option("--base", base_path, "base family file");
  c_construct->add_option("--out", out_path, "family file to write")->required();
  c_construct->add_option("--trace", trace_path, "trace JSON path (default <out>.trace.json)");
  c_construct->add_flag("--no-verify", no_verify, "skip the guarantee re-check");

  auto* c_verify = app.add_subcommand("verify", "check a property of a family file");
  std::string v_path, v_mode = "total", v_pattern;
  int vk = 3, vt = 0;
  c_verify->add_option("family", v_path, "family file")->required();
  c_verify->add_option("--k", vk, "tuple size")->required();
  c_verify->add_option("--mode", v_mode, "total|partial|fraction|pattern");
  c_verify->add_option("--t", vt, "order threshold for partial mode");
  c_verify->add_option("--pattern", v_pattern, "pattern for pattern mode, e.g. 2,1,3");

  auto* c_search = app.add_subcommand("search", "exact oracle search");
  std::string s_which;
  int sn = 4, sk = 3, st = 0, sm = 0;
  c_search->add_option("problem", s_which, "min|max")->required();
  c_search->add_option("-n", sn, "ground size")->required();
  c_search->add_option("-k", sk, "tuple size")->required();
  c_search->add_option("-t", st, "order threshold (min)");
  c_search->add_option("-m", sm, "family size (max)");

  auto* c_fraction = app.add_subcommand("fraction", "measure the shattered fraction");
  std::string f_path;
  int fk = 3;
  c_fraction->add_option("family", f_path, "family file")->required();
  c_fraction->add_option("--k", fk, "tuple size")->required();

  auto* c_sep = app.add_subcommand("separators", "emit a verified partition system");
  std::string sep_kind = "binary", sep_out;
  int sep_n = 2;
  c_sep->add_option("--kind", sep_kind, "binary|ordered")->required();
  c_sep->add_option("--n", sep_n, "ground size")->required();
  c_sep->add_option("--out", sep_out, "write JSON here instead of stdout");

  auto* c_probe = app.add_subcommand("probe", "fractional shattering across ground sizes");
  int pk = 3, pm = 6, p_from = 4, p_to = 5;
  c_probe->add_option("--k", pk, "tuple size")->required();
  c_probe->add_option("--m", pm, "family size")->required();
  c_probe->add_option("--n-from", p_from, "first ground size")->required();
  c_probe->add_option("--n-to", p_to, "last ground size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? kExitOk : kExitUsage;
  }

  apply_env_threads(g);

  try {
    if (*c_construct)
      return run_construct(g, kind, ck, cr, cn, cN, base_path, out_path, trace_path, no_verify);
    if (*c_verify) return run_verify(g, v_path, vk, v_mode, vt, v_pattern);
    if (*c_search) return run_search(g, s_which, sn, sk, st, sm);
    if (*c_fraction) return run_fraction(g, f_path, fk);
    if (*c_sep) return run_separators(g, sep_kind, sep_n, sep_out);
    if (*c_probe) return run_probe(g, pk, pm, p_from, p_to);
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
