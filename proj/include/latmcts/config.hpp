#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latmcts/harness.hpp"
#include "latmcts/report.hpp"

namespace latmcts {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value store with per-key provenance for error messages.
class KeyValues {
 public:
  // throws ConfigError naming file and line on malformed input
  static KeyValues parse_file(const std::string& path);

  void set(const std::string& key, std::string value, std::string source = "command line");
  bool contains(const std::string& key) const { return values_.count(key) > 0; }
  const std::string* find(const std::string& key) const;
  const std::string& source(const std::string& key) const;
  const std::map<std::string, std::string>& items() const { return values_; }

  // later entries win key-by-key
  void merge_from(const KeyValues& overrides);

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> sources_;
};

// Fully validated configuration for one experiment cell.
struct RunSettings {
  GridConfig grid;
  TargetDistribution target;
  Strategy strategy;
  int trials = 1;
  uint64_t seed = 0;
  int workers = 0;
  std::string out = "run";
  bool strict = false;
};

// Validates every key against the registry; unknown keys, missing required
// keys, and malformed values throw ConfigError naming the key (and source
// line when it came from a file).
RunSettings resolve_run_settings(const KeyValues& kv);

// target.* keys only; used by resolve_run_settings and the histogram command
TargetDistribution resolve_target(const KeyValues& kv, int side);

// Resolved provenance pairs, loadable back through parse_file/resolve.
KvPairs echo_settings(const RunSettings& settings);

// true if `key` is accepted by the resolver (including informational
// latmcts.* provenance keys)
bool is_known_key(const std::string& key);

}  // namespace latmcts
