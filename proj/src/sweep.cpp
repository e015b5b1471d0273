#include "guamp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "guamp/csv.hpp"
#include "guamp/metrics.hpp"
#include "guamp/svd.hpp"

namespace guamp {

namespace {

struct Cell {
  SweepChannel channel;
  double rho;
  double snr_db;
  std::size_t rho_index;
};

std::vector<Cell> enumerate_cells(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (SweepChannel channel : config.channels) {
    for (std::size_t r = 0; r < config.rho_list.size(); ++r) {
      for (double snr : config.snr_db_list) {
        cells.push_back({channel, config.rho_list[r], snr, r});
      }
    }
  }
  return cells;
}

struct Roots {
  Matrix left;
  Matrix right;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<RunRecord> run_trial(const SweepConfig& config, const Cell& cell,
                                 std::size_t cell_index, int trial, const Roots& roots,
                                 bool record_timing) {
  ProblemSpec spec;
  spec.m = config.m;
  spec.n = config.n;
  spec.rho = cell.rho;
  spec.snr_db = cell.snr_db;
  spec.channel = channel_kind(cell.channel);
  spec.lambda = config.lambda;
  Rng rng = Rng::for_stream(config.master_seed,
                            {static_cast<std::uint64_t>(cell_index),
                             static_cast<std::uint64_t>(trial)});
  const GlmProblem problem = make_problem(spec, roots.left, roots.right, rng,
                                          static_cast<std::uint64_t>(trial));

  const bool needs_svd = std::any_of(config.algorithms.begin(), config.algorithms.end(),
                                     [](Algorithm a) { return a != Algorithm::gamp; });
  std::optional<SvdFactors> svd;
  if (needs_svd) svd = economy_svd(problem.A);
  const RunParams params = config.run_params();

  std::vector<RunRecord> rows;
  rows.reserve(config.algorithms.size() * static_cast<std::size_t>(config.T_max));
  for (Algorithm algorithm : config.algorithms) {
    std::vector<double> stamps;
    RunHooks hooks;
    const auto start = Clock::now();
    if (record_timing) {
      hooks.on_iteration = [&](int, const IterationRow&, const Vector&) {
        stamps.push_back(elapsed_ms(start));
      };
    }
    RunResult result;
    switch (algorithm) {
      case Algorithm::guamp: result = guamp_run(problem, *svd, params, hooks); break;
      case Algorithm::gamp: result = gamp_run(problem, params, hooks); break;
      case Algorithm::uamp: result = uamp_run(problem, *svd, params, hooks); break;
    }
    for (std::size_t k = 0; k < result.trace.size(); ++k) {
      const IterationRow& it = result.trace[k];
      RunRecord rec;
      rec.algorithm = algorithm;
      rec.trial = trial;
      rec.rho = cell.rho;
      rec.snr_db = cell.snr_db;
      rec.channel = cell.channel;
      rec.outer_iter = it.iter;
      rec.dnmse_z_db = to_db(it.dnmse_z);
      rec.nmse_z_db = to_db(it.nmse_z);
      rec.nmse_x_db = to_db(it.nmse_x);
      rec.diverged = it.diverged;
      if (record_timing) rec.wall_ms = stamps[k];
      rec.min_var = it.min_var;
      rec.max_var = it.max_var;
      rows.push_back(rec);
    }
  }
  return rows;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  if (v.size() % 2 == 1) return v[h];
  return 0.5 * (v[h - 1] + v[h]);
}

double mean_of_db(const std::vector<double>& db) {
  double sum = 0.0;
  for (double d : db) sum += std::isinf(d) ? d : std::pow(10.0, d / 10.0);
  return to_db(sum / static_cast<double>(db.size()));
}

}  // namespace

unsigned resolve_workers(const SweepOptions& options) {
  if (options.workers > 0) return options.workers;
  if (const char* env = std::getenv("GUAMP_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep_records(const SweepConfig& config, const SweepOptions& options) {
  config.validate();
  const std::vector<Cell> cells = enumerate_cells(config);

  std::vector<Roots> roots;
  for (double rho : config.rho_list) {
    roots.push_back({correlation_sqrt(config.m, rho), correlation_sqrt(config.n, rho)});
  }

  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t tasks = cells.size() * trials;
  std::vector<std::vector<RunRecord>> buffers(tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mutex;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(options), tasks));

  auto work = [&] {
    while (!failed.load()) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t c = task / trials;
      const int trial = static_cast<int>(task % trials);
      try {
        const auto start = Clock::now();
        buffers[task] = run_trial(config, cells[c], c, trial, roots[cells[c].rho_index],
                                  options.record_timing);
        if (trial == 0 && options.progress) {
          const double secs = elapsed_ms(start) / 1000.0;
          const double estimate = secs * static_cast<double>(trials) / workers;
          std::lock_guard<std::mutex> lock(mutex);
          *options.progress << "cell " << c + 1 << "/" << cells.size() << " ("
                            << to_string(cells[c].channel) << ", rho=" << cells[c].rho
                            << ", snr=" << cells[c].snr_db << " dB): first trial " << secs
                            << " s, estimated " << estimate << " s for " << trials
                            << " trials on " << workers << " worker(s)\n";
          options.progress->flush();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  SweepResult result;
  for (auto& b : buffers) {
    result.records.insert(result.records.end(), b.begin(), b.end());
  }
  result.summary = summarize(config, result.records);
  return result;
}

SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options) {
  SweepResult result = run_sweep_records(config, options);

  std::string text = results_header() + "\n";
  for (const RunRecord& r : result.records) text += format_record(r) + "\n";
  const std::filesystem::path out(config.out_path);
  write_atomically(out, text);

  std::string summary = summary_header() + "\n";
  for (const SummaryRow& s : result.summary) summary += format_summary(s) + "\n";
  write_atomically(out.parent_path() / "summary.csv", summary);
  return result;
}

std::string results_header() {
  return csv::join_row({"algorithm", "trial", "rho", "snr_db", "channel", "outer_iter",
                        "dnmse_z_db", "nmse_z_db", "nmse_x_db", "diverged", "wall_ms",
                        "min_var", "max_var"});
}

std::string format_record(const RunRecord& r) {
  using csv::format_double;
  return csv::join_row({std::string(to_string(r.algorithm)), std::to_string(r.trial),
                        format_double(r.rho), format_double(r.snr_db),
                        std::string(to_string(r.channel)), std::to_string(r.outer_iter),
                        format_double(r.dnmse_z_db), format_double(r.nmse_z_db),
                        format_double(r.nmse_x_db), r.diverged ? "1" : "0",
                        r.wall_ms ? format_double(*r.wall_ms) : std::string(),
                        format_double(r.min_var), format_double(r.max_var)});
}

std::string summary_header() {
  return csv::join_row({"algorithm", "channel", "rho", "snr_db", "trials", "diverged_trials",
                        "median_dnmse_z_db", "mean_dnmse_z_db", "median_nmse_z_db",
                        "mean_nmse_z_db", "median_nmse_x_db", "mean_nmse_x_db"});
}

std::string format_summary(const SummaryRow& s) {
  using csv::format_double;
  return csv::join_row({std::string(to_string(s.algorithm)), std::string(to_string(s.channel)),
                        format_double(s.rho), format_double(s.snr_db),
                        std::to_string(s.trials), std::to_string(s.diverged_trials),
                        format_double(s.median_dnmse_z_db), format_double(s.mean_dnmse_z_db),
                        format_double(s.median_nmse_z_db), format_double(s.mean_nmse_z_db),
                        format_double(s.median_nmse_x_db), format_double(s.mean_nmse_x_db)});
}

std::vector<SummaryRow> summarize(const SweepConfig& config,
                                  const std::vector<RunRecord>& records) {
  struct Finals {
    std::vector<double> dnmse_z, nmse_z, nmse_x;
    int diverged = 0;
  };
  using Key = std::tuple<SweepChannel, double, double, Algorithm>;
  std::map<Key, Finals> finals;
  for (const RunRecord& r : records) {
    if (r.outer_iter != config.T_max) continue;
    Finals& f = finals[{r.channel, r.rho, r.snr_db, r.algorithm}];
    f.dnmse_z.push_back(r.dnmse_z_db);
    f.nmse_z.push_back(r.nmse_z_db);
    f.nmse_x.push_back(r.nmse_x_db);
    f.diverged += r.diverged ? 1 : 0;
  }

  std::vector<SummaryRow> rows;
  for (const Cell& cell : enumerate_cells(config)) {
    for (Algorithm algorithm : config.algorithms) {
      const auto it = finals.find({cell.channel, cell.rho, cell.snr_db, algorithm});
      if (it == finals.end()) continue;
      const Finals& f = it->second;
      SummaryRow s;
      s.algorithm = algorithm;
      s.channel = cell.channel;
      s.rho = cell.rho;
      s.snr_db = cell.snr_db;
      s.trials = static_cast<int>(f.dnmse_z.size());
      s.diverged_trials = f.diverged;
      s.median_dnmse_z_db = median(f.dnmse_z);
      s.mean_dnmse_z_db = mean_of_db(f.dnmse_z);
      s.median_nmse_z_db = median(f.nmse_z);
      s.mean_nmse_z_db = mean_of_db(f.nmse_z);
      s.median_nmse_x_db = median(f.nmse_x);
      s.mean_nmse_x_db = mean_of_db(f.nmse_x);
      rows.push_back(s);
    }
  }
  return rows;
}

}  // namespace guamp
