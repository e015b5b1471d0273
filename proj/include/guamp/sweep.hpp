#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "guamp/config.hpp"

namespace guamp {

// One (algorithm, trial, outer iteration) measurement.
struct RunRecord {
  Algorithm algorithm = Algorithm::guamp;
  int trial = 0;
  double rho = 0.0;
  double snr_db = 0.0;
  SweepChannel channel = SweepChannel::onebit;
  int outer_iter = 0;
  double dnmse_z_db = 0.0;
  double nmse_z_db = 0.0;
  double nmse_x_db = 0.0;
  bool diverged = false;
  std::optional<double> wall_ms;  // only with SweepOptions::record_timing
  double min_var = 0.0;
  double max_var = 0.0;
};

// Final-iteration statistics of one (algorithm, channel, rho, snr) cell.
// Medians are taken over the dB values, means over the linear values.
struct SummaryRow {
  Algorithm algorithm = Algorithm::guamp;
  SweepChannel channel = SweepChannel::onebit;
  double rho = 0.0;
  double snr_db = 0.0;
  int trials = 0;
  int diverged_trials = 0;
  double median_dnmse_z_db = 0.0;
  double mean_dnmse_z_db = 0.0;
  double median_nmse_z_db = 0.0;
  double mean_nmse_z_db = 0.0;
  double median_nmse_x_db = 0.0;
  double mean_nmse_x_db = 0.0;
};

struct SweepOptions {
  bool record_timing = false;
  // 0: GUAMP_WORKERS if set, else std::thread::hardware_concurrency().
  unsigned workers = 0;
  // Per-cell time estimates after each cell's first trial; nullptr silences them.
  std::ostream* progress = nullptr;
};

struct SweepResult {
  // Ordered by (cell, trial, algorithm, outer_iter); cells iterate channel,
  // then rho, then snr_db, in config order.
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
};

// Worker count resolved from options and the environment.
unsigned resolve_workers(const SweepOptions& options);

// Runs the full Monte Carlo sweep in memory. Trial t of cell c draws its
// problem from Rng::for_stream(master_seed, {c, t}).
SweepResult run_sweep_records(const SweepConfig& config, const SweepOptions& options = {});

// run_sweep_records, then writes config.out_path and a sibling summary.csv,
// each atomically (temporary file + rename). Throws std::runtime_error on
// I/O failure.
SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options = {});

std::string results_header();
std::string format_record(const RunRecord& record);
std::string summary_header();
std::string format_summary(const SummaryRow& row);

std::vector<SummaryRow> summarize(const SweepConfig& config,
                                  const std::vector<RunRecord>& records);

}  // namespace guamp
