#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "guamp/algorithms.hpp"
#include "guamp/errors.hpp"
#include "guamp/metrics.hpp"

using namespace guamp;

namespace {

GlmProblem small_problem(ChannelKind kind, double rho, std::uint64_t seed, Index m = 64,
                         Index n = 16, double lambda = 0.1, double snr = 20.0) {
  ProblemSpec spec;
  spec.m = m;
  spec.n = n;
  spec.rho = rho;
  spec.snr_db = snr;
  spec.channel = kind;
  spec.lambda = lambda;
  Rng rng(seed);
  return make_problem(spec, rng, seed);
}

// A y / sigma^2 posterior mean for the prior N(0, v0 I).
Vector gaussian_posterior_mean(const GlmProblem& p) {
  const Index n = p.A.cols();
  const Matrix H = p.A.transpose() * p.A / p.noise_var +
                   Matrix::Identity(n, n) / p.prior.slab_var;
  return H.ldlt().solve(p.A.transpose() * p.y / p.noise_var);
}

Matrix random_orthogonal(Index n, Rng& rng) {
  Matrix G(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) G(i, j) = rng.normal();
  }
  return Eigen::HouseholderQR<Matrix>(G).householderQ();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(GuampRun, ZeroIterationsReturnsInitialization) {
  const GlmProblem p = small_problem(ChannelKind::onebit, 0.0, 1);
  RunParams params;
  params.T_max = 0;
  const RunResult r = guamp_run(p, params);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.x_hat, Vector::Zero(16));
}

TEST(GuampRun, ImprovesOnFirstIteration) {
  std::vector<double> first, last;
  RunParams params;
  params.T_max = 50;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RunResult r = guamp_run(small_problem(ChannelKind::onebit, 0.0, 100 + seed), params);
    first.push_back(r.trace.front().dnmse_z);
    last.push_back(r.trace.back().dnmse_z);
  }
  EXPECT_LT(median(last), median(first));
}

TEST(GuampRun, IsDeterministic) {
  const GlmProblem p = small_problem(ChannelKind::multibit, 0.35, 5);
  RunParams params;
  params.T_max = 20;
  const RunResult a = guamp_run(p, params);
  const RunResult b = guamp_run(p, params);
  EXPECT_EQ(a.x_hat, b.x_hat);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].dnmse_z, b.trace[k].dnmse_z);
    EXPECT_EQ(a.trace[k].min_var, b.trace[k].min_var);
  }
}

TEST(AllRuns, VariancesStayInWindow) {
  RunParams params;
  params.T_max = 30;
  for (ChannelKind kind : {ChannelKind::gaussian, ChannelKind::onebit, ChannelKind::multibit}) {
    for (double rho : {0.0, 0.35}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const GlmProblem p = small_problem(kind, rho, 40 + seed, 128, 32);
        std::vector<Algorithm> algs{Algorithm::guamp, Algorithm::gamp};
        if (kind == ChannelKind::gaussian) algs.push_back(Algorithm::uamp);
        for (Algorithm alg : algs) {
          const RunResult r = run_algorithm(alg, p, params);
          ASSERT_EQ(r.trace.size(), 30u);
          for (const IterationRow& row : r.trace) {
            EXPECT_GE(row.min_var, kVarianceFloor) << to_string(alg);
            EXPECT_LE(row.max_var, kVarianceCeiling) << to_string(alg);
            EXPECT_FALSE(std::isnan(row.dnmse_z) || std::isnan(row.nmse_z) ||
                         std::isnan(row.nmse_x));
          }
        }
      }
    }
  }
}

TEST(GuampGaussianChannel, ModuleBExtrinsicEqualsRotatedObservations) {
  const GlmProblem p = small_problem(ChannelKind::gaussian, 0.3, 9, 256, 64);
  RunParams params;
  params.T_max = 50;
  const ReductionReport r = check_reduction(p, params);
  EXPECT_LE(r.max_ext_mean_deviation, 1e-10);
  EXPECT_LE(r.max_ext_var_deviation, 1e-10);
}

TEST(GuampGaussianChannel, TrajectoryMatchesUamp) {
  const GlmProblem p = small_problem(ChannelKind::gaussian, 0.3, 9, 256, 64);
  RunParams params;
  params.T_max = 50;
  EXPECT_LE(check_reduction(p, params).max_trajectory_deviation, 1e-8);
}

TEST(GampRun, OrthogonalGaussianReachesPosteriorMean) {
  Rng rng(12);
  GlmProblem p = small_problem(ChannelKind::gaussian, 0.0, 12, 24, 24, 1.0, 10.0);
  p.A = random_orthogonal(24, rng);
  p.z_true = p.A * p.x_true;
  for (Index i = 0; i < 24; ++i) p.y(i) = p.z_true(i) + std::sqrt(p.noise_var) * rng.normal();
  RunParams params;
  params.T_max = 200;
  const RunResult r = gamp_run(p, params);
  const Vector x_mmse = gaussian_posterior_mean(p);
  EXPECT_LE((r.x_hat - x_mmse).norm(), 1e-6 * x_mmse.norm());
}

TEST(GampRun, IdentityMatrixDecouples) {
  GlmProblem p = small_problem(ChannelKind::gaussian, 0.0, 2, 8, 8, 1.0);
  p.A = Matrix::Identity(8, 8);
  p.z_true = p.x_true;
  RunParams params;
  params.T_max = 1;
  const RunResult r = gamp_run(p, params);
  const double v0 = p.prior.slab_var;
  for (Index j = 0; j < 8; ++j) {
    const double tau_r = v0 + p.noise_var;  // 1 / tau_s of the first sweep
    const double r_hat = tau_r * p.y(j) / (v0 + p.noise_var);
    EXPECT_NEAR(r.x_hat(j), r_hat * v0 / (v0 + tau_r), 1e-14);
  }
}

TEST(GampRun, DivergentRunIsFrozenAndFlagged) {
  ProblemSpec spec;
  spec.m = 512;
  spec.n = 128;
  spec.rho = 0.35;
  Rng rng = Rng::for_stream(7, {0, 0});
  const GlmProblem p = make_problem(spec, rng);
  RunParams params;
  const RunResult r = gamp_run(p, params);
  ASSERT_EQ(r.trace.size(), 100u);
  EXPECT_TRUE(r.trace.back().diverged);
  EXPECT_TRUE(r.x_hat.allFinite());
  bool seen = false;
  for (const IterationRow& row : r.trace) {
    EXPECT_FALSE(std::isnan(row.dnmse_z));
    EXPECT_TRUE(!seen || row.diverged);
    seen = seen || row.diverged;
  }
}

TEST(UampRun, NoiselessOrthogonalRecovery) {
  Rng rng(31);
  GlmProblem p = small_problem(ChannelKind::gaussian, 0.0, 31, 32, 32);
  p.A = random_orthogonal(32, rng);
  p.z_true = p.A * p.x_true;
  p.y = p.z_true;
  p.noise_var = 1e-13;
  RunParams params;
  params.T_max = 50;
  const RunResult r = uamp_run(p, params);
  EXPECT_LE(to_db(r.trace.back().nmse_x), -80.0);
}

TEST(UampRun, GaussianPriorReachesPosteriorMean) {
  const GlmProblem p = small_problem(ChannelKind::gaussian, 0.2, 17, 64, 32, 1.0, 10.0);
  RunParams params;
  params.T_max = 200;
  const RunResult r = uamp_run(p, params);
  const Vector x_mmse = gaussian_posterior_mean(p);
  EXPECT_LE((r.x_hat - x_mmse).norm(), 1e-4 * x_mmse.norm());
}

TEST(UampRun, RequiresGaussianChannel) {
  const GlmProblem p = small_problem(ChannelKind::onebit, 0.0, 1);
  EXPECT_THROW(uamp_run(p, RunParams{}), UnsupportedOperation);
}

TEST(RunParams, Validation) {
  const GlmProblem p = small_problem(ChannelKind::onebit, 0.0, 1);
  EXPECT_THROW(guamp_run(p, RunParams{10, 0, 1}), InvalidParameter);
  EXPECT_THROW(guamp_run(p, RunParams{-1, 4, 1}), InvalidParameter);
}

TEST(Hooks, CalledOncePerIteration) {
  const GlmProblem p = small_problem(ChannelKind::onebit, 0.0, 3);
  int rows = 0, ext = 0;
  RunHooks hooks;
  hooks.on_iteration = [&](int iter, const IterationRow& row, const Vector&) {
    EXPECT_EQ(iter, row.iter);
    ++rows;
  };
  hooks.on_b_extrinsic = [&](int, const GaussianBeliefs&) { ++ext; };
  guamp_run(p, RunParams{7, 4, 1}, hooks);
  EXPECT_EQ(rows, 7);
  EXPECT_EQ(ext, 7);
}
