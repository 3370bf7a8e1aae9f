#pragma once

// JSON document shapes for reports, partition systems, and construction
// traces. Every document carries schema_version 1.

#include <json.hpp>

#include "shatter/checkers.hpp"
#include "shatter/constructions.hpp"
#include "shatter/oracle.hpp"
#include "shatter/separators.hpp"

namespace shatter {

inline constexpr int kSchemaVersion = 1;

nlohmann::ordered_json coverage_to_json(const CoverageReport& rep, int witness_limit = 10);
nlohmann::ordered_json partition_system_to_json(const PartitionSystem& sys,
                                                const std::string& kind, bool verified);
nlohmann::ordered_json search_report_to_json(const SearchReport& rep, bool include_wall_time);
nlohmann::ordered_json probe_report_to_json(const ProbeReport& rep);
nlohmann::ordered_json trace_to_json(const ConstructionTrace& trace);

} // namespace shatter
