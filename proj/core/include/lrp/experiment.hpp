#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrp/fit.hpp"
#include "lrp/model.hpp"

namespace lrp {

enum class DiameterMetric { none, exact, estimate, automatic };

/// Which per-trial quantities to record. `timing` adds wall-clock ms to the
/// CSV and is off by default: archived runs must rerun byte-identically.
struct MetricsSpec {
  DiameterMetric diameter = DiameterMetric::automatic;
  bool corner_path = true;
  bool structure = false;
  bool descent = false;
  bool renorm = false;
  bool timing = false;
};

/// A sweep over the parameter grid dims x sides x exponents x betas
/// (betas fastest), `trials` seeded trials per cell.
struct ExperimentConfig {
  std::vector<int> dims{1};
  std::vector<std::int64_t> sides;
  std::vector<double> exponents;
  std::vector<double> betas;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  MetricsSpec metrics;
  double renorm_alpha = 0.8;
  int renorm_levels = 2;
  int descent_c = 2;
  /// 0 = derive ceil(10 log n / log log n) per cell (minimum 8).
  std::int64_t descent_max_steps = 0;
  std::vector<double> tail_psi;
  /// 0 = take LRP_WORKERS from the environment, else 1.
  int workers = 0;
  std::string out;

  std::int64_t cell_count() const;
  /// Cells in config order; cell_index in [0, cell_count).
  ModelParams cell_params(std::int64_t cell_index) const;
};

ExperimentConfig config_from_json(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

/// One row of the report. Every value is a deterministic function of
/// (config, seed, cell, trial).
struct TrialRecord {
  int d = 1;
  std::int64_t n = 0;
  double s = 0.0;
  double beta = 0.0;
  std::int64_t trial = 0;
  std::int64_t edges = 0;
  std::optional<std::int64_t> diameter;
  std::string diam_mode;  // "exact" or "lower_bound"
  std::optional<std::int64_t> corner_path;
  std::optional<std::int64_t> cuts;
  std::optional<std::int64_t> isolated;
  std::optional<std::int64_t> ball2;
  std::optional<std::int64_t> descent_steps;
  std::optional<int> renorm_valid;
  std::vector<std::optional<std::int64_t>> tail_sums;  // one per config.tail_psi
  double wall_ms = 0.0;
};

struct MetricAggregate {
  std::string metric;
  std::int64_t count = 0;
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
};

struct CellAggregate {
  int d = 1;
  std::int64_t n = 0;
  double s = 0.0;
  double beta = 0.0;
  std::int64_t trials = 0;
  std::vector<MetricAggregate> metrics;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<CellAggregate> aggregates;
  std::string csv;      // trial rows
  std::string agg_csv;  // one row per cell
};

/// Runs the sweep. Trials execute on a worker pool but rows are emitted in
/// canonical (cell, trial) order, so the CSV is byte-identical for any worker
/// count. When config.out is set the trial CSV is streamed there as rows
/// complete and the aggregate CSV lands next to it (out with ".csv" replaced
/// by ".agg.csv").
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Path of the aggregate CSV derived from a trial CSV path.
std::string aggregate_path(const std::string& out);

/// Trial CSV header for a given psi list, and one serialized row.
std::string csv_header(const ExperimentConfig& config);
std::string csv_row(const TrialRecord& rec, const MetricsSpec& metrics);

/// Reads a trial CSV produced by run_experiment (or the CLI) back into
/// records. The psi list is recovered from the header.
std::vector<TrialRecord> read_trial_csv(const std::string& path, std::vector<double>* psis);

/// Per-record value of a named metric column ("diameter", "cuts",
/// "tail_sum_psi0.4", ...), if present in that record.
std::optional<double> metric_value(const TrialRecord& rec, const std::string& metric,
                                   const std::vector<double>& psis);

/// Means per distinct n of one metric, the input both fit operations take.
std::vector<FitPoint> fit_points(const std::vector<TrialRecord>& records,
                                 const std::string& metric, const std::vector<double>& psis);

ScalingFit fit_power_law(const std::vector<TrialRecord>& records, const std::string& metric,
                         const std::vector<double>& psis = {});
ScalingFit fit_loglog_ratio(const std::vector<TrialRecord>& records, const std::string& metric,
                            RatioRegime regime, const std::vector<double>& psis = {});

}  // namespace lrp
