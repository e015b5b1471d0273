#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "guamp/beliefs.hpp"
#include "guamp/model.hpp"
#include "guamp/svd.hpp"

namespace guamp {

enum class Algorithm { guamp, gamp, uamp };

std::string_view to_string(Algorithm algorithm);

struct RunParams {
  int T_max = 100;  // outer iterations
  int T_A = 4;      // module A sweeps per outer iteration (GUAMP and UAMP)
  int T_B = 1;      // module B sweeps per outer iteration (GUAMP)

  void validate() const;
};

// Runs whose NMSE of z_hat exceeds this many dB are flagged as diverged.
inline constexpr double kDivergenceDb = 20.0;

struct IterationRow {
  int iter = 0;  // 1-based outer iteration
  double dnmse_z = 0.0;
  double nmse_z = 0.0;
  double nmse_x = 0.0;
  double mean_tau_x = 0.0;
  // Extremes over every variance vector held in the algorithm state.
  double min_var = 0.0;
  double max_var = 0.0;
  // Sticky: once set, every later row of the run carries it. After a
  // non-finite update the state is frozen at its last finite value.
  bool diverged = false;
};

using IterationTrace = std::vector<IterationRow>;

struct RunResult {
  Vector x_hat;
  IterationTrace trace;
};

struct RunHooks {
  // Called after every outer iteration with the row just recorded.
  std::function<void(int iter, const IterationRow& row, const Vector& x_hat)> on_iteration;
  // GUAMP only: the module-B extrinsic message of each outer iteration.
  std::function<void(int iter, const GaussianBeliefs& ext)> on_b_extrinsic;
};

// GUAMP: GAMP over U coupled to AMP over Q = diag(sigma) V^T through
// extrinsic messages. z_hat = A x_hat in all metrics.
RunResult guamp_run(const GlmProblem& problem, const RunParams& params,
                    const RunHooks& hooks = {});
RunResult guamp_run(const GlmProblem& problem, const SvdFactors& svd,
                    const RunParams& params, const RunHooks& hooks = {});

// Vanilla GAMP on A with the Bernoulli-Gaussian denoiser. T_A and T_B are unused.
RunResult gamp_run(const GlmProblem& problem, const RunParams& params,
                   const RunHooks& hooks = {});

// AMP on the rotated model U^T y = Q x + U^T w with noise variance sigma^2.
// One outer iteration is T_A sweeps. Gaussian channels only.
RunResult uamp_run(const GlmProblem& problem, const RunParams& params,
                   const RunHooks& hooks = {});
RunResult uamp_run(const GlmProblem& problem, const SvdFactors& svd,
                   const RunParams& params, const RunHooks& hooks = {});

RunResult run_algorithm(Algorithm algorithm, const GlmProblem& problem,
                        const RunParams& params, const RunHooks& hooks = {});

}  // namespace guamp

namespace guamp {

// Gaussian-channel comparison of GUAMP against UAMP on one problem: the
// module-B extrinsic message against (U^T y, sigma^2 1) and the two x_hat
// trajectories, entrywise maxima over all outer iterations.
struct ReductionReport {
  int iterations = 0;
  double max_ext_mean_deviation = 0.0;
  double max_ext_var_deviation = 0.0;
  double max_trajectory_deviation = 0.0;
};

ReductionReport check_reduction(const GlmProblem& problem, const RunParams& params);

}  // namespace guamp
