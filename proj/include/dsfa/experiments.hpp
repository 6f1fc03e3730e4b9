#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsfa/csv.hpp"
#include "dsfa/dynamics.hpp"
#include "dsfa/sfa.hpp"

namespace dsfa {

/// One experiment run. Defaults follow the reference protocol: 6000 points,
/// degree-2 monomials, m = 19, tau = 1.
struct RunConfig {
  double nu_f = 40.0;
  double q = 0.1;
  std::size_t m = 19;
  std::size_t tau = 1;
  std::size_t points = 6000;
  int degree = 2;
  std::size_t k = 10;
  double u0 = 0.3;
  std::size_t burn_in = 0;
  double noise_percent = 0.0;
  std::uint64_t seed = 0;
  double svd_cutoff = 1e-7;
  NoiseScale noise_scale = NoiseScale::UnitInterval;
};

struct ExperimentRecord {
  RunConfig config;
  bool ok = false;
  std::string error;  // set when !ok
  std::size_t retained_rank = 0;
  bool degenerate_pair = false;
  double corr_full = 0.0;  // |C(y_1, gamma)|
  double corr_slow = 0.0;  // |C(y_1, gamma_S)|
  double corr_fast = 0.0;  // |C(y_1, gamma_F)|
  double eta_y1 = 0.0;
  double eta_force = 0.0;
  double eta_slow = 0.0;
  double eta_ratio = 0.0;  // eta_y1 / eta_force
  std::vector<double> eta_components;  // eta(y_1..y_k)

  /// The slow component wins the comparison that defines the transition.
  bool slow_wins() const noexcept { return ok && corr_slow > corr_full; }
};

/// Full pipeline output of a single run, for callers that need the signals.
struct RunArtifacts {
  ExperimentRecord record;
  DrivingForce force;
  TimeSeries series;
  TimeWindow window;
  std::vector<std::vector<double>> outputs;  // y_1..y_k over the window
  SfaModel model;
};

/// Validates a config; throws InvalidParameter.
void validate(const RunConfig& config);

/// Number of components actually requested: k clamped to the expanded dimension.
std::size_t effective_components(const RunConfig& config);

/// Evaluates y_1..y_k of a fitted run against the force over `window`.
ExperimentRecord evaluate(const RunConfig& config, const DrivingForce& force, const TimeWindow& window,
                          const std::vector<std::vector<double>>& outputs);

/// Generates force and series (plus noise) from the config, then runs
/// run_on_series.
RunArtifacts run_pipeline(const RunConfig& config);

/// Embeds, fits and evaluates an existing series against its force. Only m,
/// tau, degree, k and svd_cutoff are read from the config.
RunArtifacts run_on_series(const RunConfig& config, DrivingForce force, TimeSeries series);

/// Errors are captured in the record (ok = false) rather than thrown, except
/// for an invalid configuration.
ExperimentRecord run_single(const RunConfig& config);

struct SweepOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ScanResult {
  std::optional<double> transition;  // lowest grid frequency where the slow component wins
  std::vector<ExperimentRecord> records;
};

std::vector<double> frequency_grid(double lo, double hi, double step);

ScanResult phase_transition_scan(const RunConfig& base, const std::vector<double>& nu_grid,
                                 const SweepOptions& options = {});

struct QmCell {
  double q = 0.0;
  std::size_t m = 0;
  ScanResult scan;
};

/// One scan per (q, m), q-major order.
std::vector<QmCell> sweep_qm(const std::vector<double>& q_values, const std::vector<std::size_t>& m_values,
                             const RunConfig& base, const std::vector<double>& nu_grid,
                             const SweepOptions& options = {});

struct EtaCell {
  std::size_t m = 0;
  double q = 0.0;
  ExperimentRecord record;
};

/// eta(y_1) per (m, q), m-major order, at the base config's nu_f.
std::vector<EtaCell> eta_table(const std::vector<std::size_t>& m_values, const std::vector<double>& q_values,
                               const RunConfig& base, const SweepOptions& options = {});

struct NoiseCell {
  std::size_t m = 0;
  double percent = 0.0;
  double mean_corr_slow = 0.0;
  double std_corr_slow = 0.0;
  std::size_t failures = 0;
  std::vector<ExperimentRecord> records;  // one per seed
};

/// Mean |C(y_1, gamma_S)| across seeds per (m, percent). Each run's noise
/// stream is seeded with mix_seed(seed, percent index), so different m see
/// the same noise realizations.
std::vector<NoiseCell> noise_study(const RunConfig& config, const std::vector<double>& percents,
                                   const std::vector<std::uint64_t>& seeds,
                                   const std::vector<std::size_t>& m_values = {},
                                   const SweepOptions& options = {});

/// Runs fn(0..count-1) on a worker pool. Callers write into per-index slots,
/// so scheduling never changes the assembled output.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// Tabular output. Column order is fixed and documented in the header row.
std::vector<std::string> record_header();
std::vector<std::string> record_fields(const ExperimentRecord& record);

void write_records(const std::string& path, const std::vector<ExperimentRecord>& records, CsvFormat format);
/// Long format: q,m,nu_f,... one row per scanned frequency.
void write_qm_long(const std::string& path, const std::vector<QmCell>& cells, CsvFormat format);
/// q,m,nu_pt summary.
void write_qm_summary(const std::string& path, const std::vector<QmCell>& cells, CsvFormat format);
void write_eta_table(const std::string& path, const std::vector<EtaCell>& cells, CsvFormat format);
void write_noise_table(const std::string& path, const std::vector<NoiseCell>& cells, CsvFormat format);

}  // namespace dsfa
