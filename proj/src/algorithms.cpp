#include "guamp/algorithms.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>

#include "guamp/channels.hpp"
#include "guamp/denoiser.hpp"
#include "guamp/errors.hpp"
#include "guamp/metrics.hpp"
#include "guamp/module_a.hpp"
#include "guamp/module_b.hpp"

namespace guamp {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::guamp: return "guamp";
    case Algorithm::gamp: return "gamp";
    case Algorithm::uamp: return "uamp";
  }
  return "unknown";
}

void RunParams::validate() const {
  if (T_max < 0) throw InvalidParameter("RunParams: T_max must be >= 0");
  if (T_A < 1) throw InvalidParameter("RunParams: T_A must be >= 1");
  if (T_B < 1) throw InvalidParameter("RunParams: T_B must be >= 1");
}

namespace {

bool all_finite(std::initializer_list<const Vector*> vectors) {
  return std::all_of(vectors.begin(), vectors.end(),
                     [](const Vector* v) { return v->allFinite(); });
}

class Recorder {
 public:
  Recorder(const GlmProblem& problem, const RunParams& params, const RunHooks& hooks)
      : problem_(problem), hooks_(hooks) {
    trace_.reserve(static_cast<std::size_t>(params.T_max));
  }

  void record(int iter, const Vector& x_hat, const Vector& tau_x,
              std::initializer_list<const Vector*> variances, bool frozen) {
    IterationRow row;
    row.iter = iter;
    const Vector z_hat = problem_.A * x_hat;
    row.dnmse_z = dnmse(problem_.z_true, z_hat);
    row.nmse_z = nmse(problem_.z_true, z_hat);
    row.nmse_x = nmse(problem_.x_true, x_hat);
    row.mean_tau_x = tau_x.mean();
    row.min_var = std::numeric_limits<double>::infinity();
    row.max_var = -std::numeric_limits<double>::infinity();
    for (const Vector* v : variances) {
      if (v->size() == 0) continue;
      row.min_var = std::min(row.min_var, v->minCoeff());
      row.max_var = std::max(row.max_var, v->maxCoeff());
    }
    sticky_ = sticky_ || frozen || to_db(row.nmse_z) > kDivergenceDb;
    row.diverged = sticky_;
    trace_.push_back(row);
    if (hooks_.on_iteration) hooks_.on_iteration(iter, row, x_hat);
  }

  IterationTrace take() { return std::move(trace_); }

 private:
  const GlmProblem& problem_;
  const RunHooks& hooks_;
  IterationTrace trace_;
  bool sticky_ = false;
};

bool finite_state(const ModuleAState& a) {
  return all_finite({&a.x_hat, &a.tau_x, &a.s_hat, &a.tau_s, &a.p_hat, &a.tau_p,
                     &a.r_hat, &a.tau_r});
}

bool finite_state(const ModuleBState& b) {
  return all_finite({&b.b_hat, &b.tau_b, &b.s_hat, &b.p_hat, &b.tau_p, &b.r_hat,
                     &b.tau_r});
}

void require_gaussian(const GlmProblem& problem) {
  if (problem.channel.kind != ChannelKind::gaussian) {
    throw UnsupportedOperation("uamp_run: requires a gaussian channel");
  }
}

}  // namespace

RunResult guamp_run(const GlmProblem& problem, const RunParams& params,
                    const RunHooks& hooks) {
  params.validate();
  return guamp_run(problem, economy_svd(problem.A), params, hooks);
}

RunResult guamp_run(const GlmProblem& problem, const SvdFactors& svd,
                    const RunParams& params, const RunHooks& hooks) {
  params.validate();
  const MixingMatrix U(svd.U);
  const MixingMatrix Q(svd.Q);
  const Index m = U.rows();
  const Index r = U.cols();

  ModuleAState a = module_a_init(problem.prior, Q);
  GaussianBeliefs ext_a{Vector::Zero(r), clamp_variance(a.tau_p)};
  ModuleBState b;
  b.b_hat = Vector::Zero(r);
  b.tau_b = ext_a.var;
  b.s_hat = Vector::Zero(m);

  Recorder recorder(problem, params, hooks);
  bool frozen = false;
  for (int t = 1; t <= params.T_max; ++t) {
    if (!frozen) {
      ModuleBState b_next = b;
      for (int k = 0; k < params.T_B; ++k) {
        b_next = module_b_step(b_next, ext_a, problem.y, problem.channel, U);
      }
      const GaussianBeliefs ext_b = extrinsic_b_to_a(b_next);
      ModuleAState a_next = a;
      for (int k = 0; k < params.T_A; ++k) a_next = module_a_step(a_next, ext_b, problem.prior, Q);
      if (finite_state(b_next) && finite_state(a_next)) {
        b = std::move(b_next);
        a = std::move(a_next);
        ext_a = extrinsic_a_to_b(a);
        if (hooks.on_b_extrinsic) hooks.on_b_extrinsic(t, ext_b);
      } else {
        frozen = true;
      }
    }
    recorder.record(t, a.x_hat, a.tau_x,
                    {&b.tau_b, &b.tau_p, &b.tau_r, &a.tau_x, &a.tau_s, &a.tau_p, &a.tau_r},
                    frozen);
  }
  return {a.x_hat, recorder.take()};
}

RunResult gamp_run(const GlmProblem& problem, const RunParams& params,
                   const RunHooks& hooks) {
  params.validate();
  const MixingMatrix A(problem.A);
  const Index m = A.rows();
  const Index n = A.cols();

  Vector x_hat = Vector::Zero(n);
  Vector tau_x = clamp_variance(Vector::Constant(n, problem.prior.variance()));
  Vector s_hat = Vector::Zero(m);
  Vector tau_p, tau_r;

  Recorder recorder(problem, params, hooks);
  bool frozen = false;
  for (int t = 1; t <= params.T_max; ++t) {
    if (!frozen) {
      const Vector tp = clamp_variance(A.squared() * tau_x);
      const Vector p_hat = A.value() * x_hat - tp.cwiseProduct(s_hat);
      Vector s(m), tau_s(m);
      for (Index i = 0; i < m; ++i) {
        const OutputMoments g = gout(problem.channel, p_hat(i), problem.y(i), tp(i));
        s(i) = g.s_hat;
        tau_s(i) = g.tau_s;
      }
      const Vector tr = clamp_variance((A.squared().transpose() * tau_s).cwiseInverse());
      const Vector r_hat = x_hat + tr.cwiseProduct(A.value().transpose() * s);
      Vector x(n), tx(n);
      for (Index j = 0; j < n; ++j) {
        const DenoiserMoments d = bg_denoiser(r_hat(j), tr(j), problem.prior);
        x(j) = d.x_hat;
        tx(j) = d.tau_x;
      }
      tx = clamp_variance(std::move(tx));
      if (all_finite({&tp, &p_hat, &s, &tr, &r_hat, &x, &tx})) {
        x_hat = std::move(x);
        tau_x = std::move(tx);
        s_hat = std::move(s);
        tau_p = tp;
        tau_r = tr;
      } else {
        frozen = true;
      }
    }
    recorder.record(t, x_hat, tau_x, {&tau_p, &tau_r, &tau_x}, frozen);
  }
  return {x_hat, recorder.take()};
}

RunResult uamp_run(const GlmProblem& problem, const RunParams& params,
                   const RunHooks& hooks) {
  require_gaussian(problem);
  params.validate();
  return uamp_run(problem, economy_svd(problem.A), params, hooks);
}

RunResult uamp_run(const GlmProblem& problem, const SvdFactors& svd,
                   const RunParams& params, const RunHooks& hooks) {
  require_gaussian(problem);
  params.validate();
  const MixingMatrix Q(svd.Q);
  const GaussianBeliefs pseudo{svd.U.transpose() * problem.y,
                               clamp_variance(Vector::Constant(svd.rank, problem.noise_var))};

  ModuleAState a = module_a_init(problem.prior, Q);
  Recorder recorder(problem, params, hooks);
  bool frozen = false;
  for (int t = 1; t <= params.T_max; ++t) {
    if (!frozen) {
      ModuleAState a_next = a;
      for (int k = 0; k < params.T_A; ++k) a_next = module_a_step(a_next, pseudo, problem.prior, Q);
      if (finite_state(a_next)) {
        a = std::move(a_next);
      } else {
        frozen = true;
      }
    }
    recorder.record(t, a.x_hat, a.tau_x, {&a.tau_x, &a.tau_s, &a.tau_p, &a.tau_r}, frozen);
  }
  return {a.x_hat, recorder.take()};
}

RunResult run_algorithm(Algorithm algorithm, const GlmProblem& problem,
                        const RunParams& params, const RunHooks& hooks) {
  switch (algorithm) {
    case Algorithm::guamp: return guamp_run(problem, params, hooks);
    case Algorithm::gamp: return gamp_run(problem, params, hooks);
    case Algorithm::uamp: return uamp_run(problem, params, hooks);
  }
  throw InvalidParameter("run_algorithm: unknown algorithm");
}

}  // namespace guamp

namespace guamp {

ReductionReport check_reduction(const GlmProblem& problem, const RunParams& params) {
  require_gaussian(problem);
  const SvdFactors svd = economy_svd(problem.A);
  const Vector uty = svd.U.transpose() * problem.y;

  ReductionReport report;
  std::vector<Vector> guamp_path;
  RunHooks gh;
  gh.on_b_extrinsic = [&](int, const GaussianBeliefs& ext) {
    report.max_ext_mean_deviation =
        std::max(report.max_ext_mean_deviation, (ext.mean - uty).cwiseAbs().maxCoeff());
    report.max_ext_var_deviation =
        std::max(report.max_ext_var_deviation,
                 (ext.var.array() - problem.noise_var).abs().maxCoeff());
  };
  gh.on_iteration = [&](int, const IterationRow&, const Vector& x) { guamp_path.push_back(x); };
  guamp_run(problem, svd, params, gh);

  RunHooks uh;
  int k = 0;
  uh.on_iteration = [&](int, const IterationRow&, const Vector& x) {
    report.max_trajectory_deviation =
        std::max(report.max_trajectory_deviation,
                 (x - guamp_path[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff());
    ++k;
  };
  uamp_run(problem, svd, params, uh);
  report.iterations = k;
  return report;
}

}  // namespace guamp
