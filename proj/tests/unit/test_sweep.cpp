#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "guamp/csv.hpp"
#include "guamp/sweep.hpp"
#include "tempdir.hpp"

using namespace guamp;

namespace {

SweepConfig tiny(const std::filesystem::path& out) {
  SweepConfig c;
  c.m = 48;
  c.n = 12;
  c.rho_list = {0.0};
  c.snr_db_list = {20.0};
  c.channels = {SweepChannel::onebit};
  c.algorithms = {Algorithm::guamp};
  c.trials = 2;
  c.master_seed = 9;
  c.T_max = 3;
  c.out_path = out.string();
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Sweep, RowCountForTinyConfig) {
  TempDir dir;
  const SweepConfig c = tiny(dir.path() / "results.csv");
  run_sweep(c);
  const auto rows = lines(slurp(dir.path() / "results.csv"));
  ASSERT_EQ(rows.size(), 1u + 2u * 3u);
  EXPECT_EQ(rows[0], results_header());
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "summary.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "results.csv.tmp"));
}

TEST(Sweep, RowCountIsProductOfAxes) {
  TempDir dir;
  SweepConfig c = tiny(dir.path() / "r.csv");
  c.rho_list = {0.0, 0.35};
  c.snr_db_list = {10.0, 20.0};
  c.channels = {SweepChannel::onebit, SweepChannel::twobit};
  c.algorithms = {Algorithm::guamp, Algorithm::gamp};
  c.trials = 2;
  c.T_max = 4;
  const SweepResult r = run_sweep_records(c);
  EXPECT_EQ(r.records.size(), 2u * 4u * 2u * 8u);
  EXPECT_EQ(r.summary.size(), 2u * 8u);
}

TEST(Sweep, RecordsAreOrderedByCellTrialAlgorithmIteration) {
  TempDir dir;
  SweepConfig c = tiny(dir.path() / "r.csv");
  c.rho_list = {0.0, 0.2};
  c.algorithms = {Algorithm::gamp, Algorithm::guamp};
  const SweepResult r = run_sweep_records(c);
  std::size_t k = 0;
  for (double rho : c.rho_list) {
    for (int trial = 0; trial < c.trials; ++trial) {
      for (Algorithm a : c.algorithms) {
        for (int it = 1; it <= c.T_max; ++it, ++k) {
          ASSERT_LT(k, r.records.size());
          EXPECT_EQ(r.records[k].rho, rho);
          EXPECT_EQ(r.records[k].trial, trial);
          EXPECT_EQ(r.records[k].algorithm, a);
          EXPECT_EQ(r.records[k].outer_iter, it);
        }
      }
    }
  }
}

TEST(Sweep, ByteIdenticalAcrossRunsAndWorkerCounts) {
  TempDir dir;
  SweepConfig c = tiny(dir.path() / "a" / "results.csv");
  c.trials = 5;
  c.rho_list = {0.0, 0.35};
  c.algorithms = {Algorithm::guamp, Algorithm::gamp};
  std::filesystem::create_directories(dir.path() / "a");
  std::filesystem::create_directories(dir.path() / "b");
  SweepOptions one;
  one.workers = 1;
  run_sweep(c, one);
  c.out_path = (dir.path() / "b" / "results.csv").string();
  SweepOptions four;
  four.workers = 4;
  run_sweep(c, four);
  EXPECT_EQ(slurp(dir.path() / "a" / "results.csv"), slurp(dir.path() / "b" / "results.csv"));
  EXPECT_EQ(slurp(dir.path() / "a" / "summary.csv"), slurp(dir.path() / "b" / "summary.csv"));
}

TEST(Sweep, DifferentSeedChangesOutput) {
  TempDir dir;
  SweepConfig c = tiny(dir.path() / "r.csv");
  const SweepResult a = run_sweep_records(c);
  c.master_seed = 10;
  const SweepResult b = run_sweep_records(c);
  EXPECT_NE(a.records.back().dnmse_z_db, b.records.back().dnmse_z_db);
}

TEST(Sweep, TimingColumnOnlyWhenRequested) {
  TempDir dir;
  const SweepConfig c = tiny(dir.path() / "r.csv");
  const SweepResult plain = run_sweep_records(c);
  EXPECT_FALSE(plain.records[0].wall_ms.has_value());
  EXPECT_EQ(csv::split_row(format_record(plain.records[0]))[10], "");
  SweepOptions timed;
  timed.record_timing = true;
  const SweepResult t = run_sweep_records(c, timed);
  ASSERT_TRUE(t.records[0].wall_ms.has_value());
  EXPECT_GE(*t.records[0].wall_ms, 0.0);
}

TEST(Sweep, RecordFormatting) {
  RunRecord r;
  r.algorithm = Algorithm::gamp;
  r.trial = 3;
  r.rho = 0.35;
  r.snr_db = 20;
  r.channel = SweepChannel::twobit;
  r.outer_iter = 7;
  r.dnmse_z_db = -1.5;
  r.nmse_z_db = std::numeric_limits<double>::infinity();
  r.nmse_x_db = 2.25;
  r.diverged = true;
  r.min_var = 1e-13;
  r.max_var = 1e13;
  EXPECT_EQ(format_record(r), "gamp,3,0.35,20,twobit,7,-1.5,inf,2.25,1,,1e-13,1e+13");
}

TEST(Summary, MedianAndLinearMean) {
  SweepConfig c = tiny("unused.csv");
  c.trials = 3;
  c.T_max = 1;
  std::vector<RunRecord> recs(3);
  const double db[] = {-10.0, -20.0, -30.0};
  for (int t = 0; t < 3; ++t) {
    recs[t].trial = t;
    recs[t].outer_iter = 1;
    recs[t].rho = 0.0;
    recs[t].snr_db = 20.0;
    recs[t].dnmse_z_db = db[t];
    recs[t].nmse_z_db = db[t];
    recs[t].nmse_x_db = db[t];
    recs[t].diverged = t == 0;
  }
  const auto s = summarize(c, recs);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].trials, 3);
  EXPECT_EQ(s[0].diverged_trials, 1);
  EXPECT_DOUBLE_EQ(s[0].median_dnmse_z_db, -20.0);
  EXPECT_NEAR(s[0].mean_dnmse_z_db, 10.0 * std::log10((0.1 + 0.01 + 0.001) / 3.0), 1e-12);
}

TEST(Sweep, WorkersFromEnvironment) {
  SweepOptions o;
  o.workers = 3;
  EXPECT_EQ(resolve_workers(o), 3u);
  ::setenv("GUAMP_WORKERS", "2", 1);
  EXPECT_EQ(resolve_workers(SweepOptions{}), 2u);
  ::setenv("GUAMP_WORKERS", "zero", 1);
  EXPECT_GE(resolve_workers(SweepOptions{}), 1u);
  ::unsetenv("GUAMP_WORKERS");
}

TEST(Sweep, UnwritableOutputThrows) {
  TempDir dir;
  SweepConfig c = tiny(dir.path() / "missing-dir" / "r.csv");
  EXPECT_THROW(run_sweep(c), std::runtime_error);
}
