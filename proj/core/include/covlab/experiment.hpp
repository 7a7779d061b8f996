#pragma once

#include <map>
#include <string>
#include <vector>

#include "covlab/util.hpp"

namespace covlab {

// One experiment: a subcommand plus its key/value parameters. Canonical
// serialization (sorted keys) backs the config hash, so identical configs
// hash identically regardless of construction order.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> kv;

  std::string canonical_text() const;
  std::uint64_t hash() const { return fnv1a64(canonical_text()); }

  static ExperimentConfig from_text(const std::string& text);  // needs a 'command' key
  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

enum class RunStatus { Exhaustive, Sampled, Refuted, Refused };
std::string to_string(RunStatus s);

struct ResultRecord {
  ExperimentConfig config;
  RunStatus status = RunStatus::Refused;
  std::string payload_json;  // deterministic given config + seed
  std::uint64_t timing_ms = 0;
  std::string tool_version = kToolVersion;

  std::string to_json() const;
  static ResultRecord from_json(const std::string& text);
  // exit code 0 iff status in {exhaustive, sampled}; refuted 1; refused 2
  int exit_code() const;
};

// Dispatch to the owning module. Unknown commands or invalid parameters
// surface as RunStatus::Refused with the reason in the payload.
ResultRecord run_experiment(const ExperimentConfig& config);

struct ReportTables {
  std::string eq_csv;
  std::string certificates_csv;
  std::string hypotheses_csv;
  std::vector<std::string> warnings;  // e.g. mixed tool versions
};

ReportTables build_report(const std::vector<ResultRecord>& records);

std::uint64_t resolve_budget(const ExperimentConfig& config);

}  // namespace covlab
