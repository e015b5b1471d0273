#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "guamp/algorithms.hpp"
#include "guamp/model.hpp"

namespace guamp {

// Channel names accepted in a sweep: onebit, twobit ({-1.5, 0, 1.5}) and gaussian.
enum class SweepChannel { onebit, twobit, gaussian };

std::string_view to_string(SweepChannel channel);
ChannelKind channel_kind(SweepChannel channel);

struct SweepConfig {
  Index m = 512;
  Index n = 128;
  std::vector<double> rho_list{0.0};
  std::vector<double> snr_db_list{20.0};
  std::vector<SweepChannel> channels{SweepChannel::onebit};
  double lambda = 0.1;
  std::vector<Algorithm> algorithms{Algorithm::guamp, Algorithm::gamp};
  int trials = 50;
  std::uint64_t master_seed = 1;
  int T_max = 100;
  int T_A = 4;
  int T_B = 1;
  std::string out_path = "results.csv";

  // Throws ConfigError naming the first offending field.
  void validate() const;
  RunParams run_params() const { return {T_max, T_A, T_B}; }
};

// Parses a JSON document holding exactly the SweepConfig fields (all
// required, no others). Throws ConfigError on any violation.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config(const std::filesystem::path& path);

}  // namespace guamp
