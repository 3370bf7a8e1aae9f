#include "shatter/json_io.hpp"

namespace shatter {

using nlohmann::ordered_json;

ordered_json coverage_to_json(const CoverageReport& rep, int witness_limit) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["m"] = rep.m;
  j["min_count"] = rep.min_count;
  j["max_count"] = rep.max_count;
  j["shattered_count"] = rep.shattered_count;
  j["total_tuples"] = rep.total_tuples;
  ordered_json wit = ordered_json::array();
  int emitted = 0;
  for (const auto& w : rep.unshattered_witnesses) {
    if (emitted++ >= witness_limit) break;
    wit.push_back(w.elements);
  }
  j["unshattered_witnesses"] = std::move(wit);
  return j;
}

ordered_json partition_system_to_json(const PartitionSystem& sys, const std::string& kind,
                                      bool verified) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["ground"] = sys.ground;
  j["size"] = sys.parts.size();
  ordered_json parts = ordered_json::array();
  for (const auto& a : sys.parts) parts.push_back(a);
  j["parts"] = std::move(parts);
  j["verified"] = verified;
  return j;
}

ordered_json search_report_to_json(const SearchReport& rep, bool include_wall_time) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json prob;
  if (rep.problem.type == SearchProblem::Type::min_family_size) {
    prob["type"] = "min_family_size";
    prob["n"] = rep.problem.n;
    prob["k"] = rep.problem.k;
    prob["t"] = rep.problem.t;
  } else {
    prob["type"] = "max_shattered";
    prob["n"] = rep.problem.n;
    prob["k"] = rep.problem.k;
    prob["m"] = rep.problem.m;
  }
  j["problem"] = std::move(prob);
  if (rep.optimum)
    j["optimum"] = *rep.optimum;
  else
    j["optimum"] = nullptr;
  if (rep.problem.type == SearchProblem::Type::max_shattered)
    j["total_tuples"] = rep.total_tuples;
  if (rep.witness)
    j["witness"] = family_to_string(*rep.witness);
  else
    j["witness"] = nullptr;
  j["nodes_explored"] = rep.nodes_explored;
  j["proof_of_optimality"] = rep.proof_of_optimality;
  if (include_wall_time) j["wall_time"] = rep.wall_seconds;
  return j;
}

ordered_json probe_report_to_json(const ProbeReport& rep) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["k"] = rep.k;
  j["m"] = rep.m;
  ordered_json entries = ordered_json::array();
  for (const auto& e : rep.entries) {
    ordered_json je;
    je["n"] = e.n;
    je["shattered"] = e.shattered;
    je["total"] = e.total;
    je["fraction"] = e.total ? static_cast<double>(e.shattered) / e.total : 0.0;
    je["proof_of_optimality"] = e.proof_of_optimality;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["non_increasing"] = rep.non_increasing;
  j["complete"] = rep.complete;
  return j;
}

ordered_json trace_to_json(const ConstructionTrace& trace) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["recipe"] = trace.recipe;
  ordered_json params;
  for (const auto& [key, value] : trace.parameters) params[key] = value;
  j["parameters"] = std::move(params);
  ordered_json g;
  switch (trace.guarantee.kind) {
    case ClaimedGuarantee::Kind::partial:
      g["type"] = "partial";
      g["k"] = trace.guarantee.k;
      g["t"] = trace.guarantee.t;
      break;
    case ClaimedGuarantee::Kind::total:
      g["type"] = "total";
      g["k"] = trace.guarantee.k;
      break;
    case ClaimedGuarantee::Kind::fraction:
      g["type"] = "fraction";
      g["k"] = trace.guarantee.k;
      g["shattered_at_least"] = trace.guarantee.shattered_at_least;
      break;
  }
  j["claimed_guarantee"] = std::move(g);
  return j;
}

} // namespace shatter
