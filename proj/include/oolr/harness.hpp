#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oolr/metrics.hpp"
#include "oolr/traces.hpp"

namespace oolr {

/// Flat key/value view of a line-oriented config file. Lines look like
/// `section.key = value`; `#` starts a comment; later assignments win.
class KeyValues {
 public:
  static KeyValues parse_file(const std::string& path);
  static KeyValues parse_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list of doubles.
  Eigen::VectorXd get_vector(const std::string& key,
                             const Eigen::VectorXd& fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string origin_;
};

/// One learner/predictor pairing to run, e.g. `ftrl` or `oolr:zeta=0.3`.
struct ComboSpec {
  std::string id;  // filename-friendly name, e.g. oolr-zeta0.3
  LearnerKind learner = LearnerKind::Oolr;
  PredictorKind predictor = PredictorKind::Zero;
  double zeta = 0.0;
};

ComboSpec parse_combo(const std::string& token);

/// Everything a run needs, resolved from a config file plus overrides.
struct ResolvedConfig {
  std::string scenario;
  TraceConfig trace;
  ExperimentConfig experiment;  // combo-independent parts
  std::vector<ComboSpec> combos;
  std::uint64_t predictor_seed = 0;
};

ResolvedConfig resolve_config(const KeyValues& kv,
                              std::optional<std::uint64_t> seed_override,
                              const std::string& scenario_fallback);

/// Reproducibility record: the fully-resolved settings of one invocation
/// plus a content hash that changes exactly when any resolved field does.
struct RunManifest {
  std::string scenario;
  std::string trace_source;  // "generated seed=N" or the CSV path
  std::vector<std::string> outputs;
  std::string resolved_text;  // canonical sorted key=value block
  std::uint64_t config_hash = 0;
};

RunManifest build_manifest(const ResolvedConfig& cfg, const std::string& trace_source,
                           const std::vector<std::string>& outputs);
void write_manifest(const std::string& path, const RunManifest& manifest);

std::uint64_t fnv1a64(const std::string& text);

/// Report CSV with the per-slot columns
/// t,loss,loss_static,loss_dynamic,regret_static,regret_dynamic,
/// avg_regret_static,avg_regret_dynamic,h,bound. Atomic write.
void write_report_csv(const std::string& path, const RegretReport& report);

/// CLI entry points. Return the process exit code and report failures on
/// `err` so the wrappers stay trivial.
int cli_generate(const std::string& config_path, const std::string& out_csv,
                 std::optional<std::uint64_t> seed_override, std::ostream& out,
                 std::ostream& err);

int cli_run(const std::string& config_path,
            const std::optional<std::string>& trace_csv,
            const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& out,
            std::ostream& err);

int cli_report(const std::vector<std::string>& report_csvs,
               const std::string& out_summary, std::ostream& out,
               std::ostream& err);

}  // namespace oolr
