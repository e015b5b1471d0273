#include "guamp/model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "guamp/errors.hpp"

namespace guamp {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::gaussian:
      return "gaussian";
    case ChannelKind::onebit:
      return "onebit";
    case ChannelKind::multibit:
      return "multibit";
  }
  return "unknown";
}

ChannelSpec ChannelSpec::gaussian(double noise_std) {
  ChannelSpec spec{ChannelKind::gaussian, {}, noise_std};
  spec.validate();
  return spec;
}

ChannelSpec ChannelSpec::onebit(double noise_std) {
  ChannelSpec spec{ChannelKind::onebit, {}, noise_std};
  spec.validate();
  return spec;
}

ChannelSpec ChannelSpec::multibit(std::vector<double> thresholds, double noise_std) {
  ChannelSpec spec{ChannelKind::multibit, std::move(thresholds), noise_std};
  spec.validate();
  return spec;
}

ChannelSpec ChannelSpec::twobit(double noise_std) {
  return multibit({-1.5, 0.0, 1.5}, noise_std);
}

void ChannelSpec::validate() const {
  if (!(noise_std > 0.0) || !std::isfinite(noise_std)) {
    throw InvalidParameter("channel noise_std must be positive and finite");
  }
  switch (kind) {
    case ChannelKind::gaussian:
    case ChannelKind::onebit:
      if (!thresholds.empty()) {
        throw InvalidParameter("only multibit channels carry thresholds");
      }
      break;
    case ChannelKind::multibit:
      if (thresholds.empty()) {
        throw InvalidParameter("multibit channel needs at least one threshold");
      }
      for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (!std::isfinite(thresholds[k])) {
          throw InvalidParameter("thresholds must be finite");
        }
        if (k > 0 && !(thresholds[k - 1] < thresholds[k])) {
          throw InvalidParameter("thresholds must be strictly ascending");
        }
      }
      break;
  }
}

Interval ChannelSpec::cell(double y) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case ChannelKind::onebit:
      return y > 0.0 ? Interval{0.0, inf} : Interval{-inf, 0.0};
    case ChannelKind::multibit: {
      const auto k = static_cast<long>(std::lround(y));
      const auto count = static_cast<long>(thresholds.size());
      if (k < 0 || k > count) {
        throw InvalidParameter("cell index out of range for quantizer");
      }
      const double lower = k == 0 ? -inf : thresholds[static_cast<std::size_t>(k - 1)];
      const double upper = k == count ? inf : thresholds[static_cast<std::size_t>(k)];
      return {lower, upper};
    }
    case ChannelKind::gaussian:
      break;
  }
  throw UnsupportedOperation("gaussian channel has no quantizer cells");
}

Index ChannelSpec::num_cells() const {
  switch (kind) {
    case ChannelKind::onebit:
      return 2;
    case ChannelKind::multibit:
      return static_cast<Index>(thresholds.size()) + 1;
    case ChannelKind::gaussian:
      break;
  }
  throw UnsupportedOperation("gaussian channel has no quantizer cells");
}

PriorSpec PriorSpec::bernoulli_gaussian(double lambda) {
  PriorSpec prior{lambda, 1.0 / lambda};
  prior.validate();
  return prior;
}

void PriorSpec::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InvalidParameter("prior lambda must lie in (0, 1]");
  }
  if (!(slab_var > 0.0) || !std::isfinite(slab_var)) {
    throw InvalidParameter("prior slab_var must be positive and finite");
  }
}

Matrix correlation_matrix(Index size, double rho) {
  Matrix R(size, size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      R(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    }
  }
  return R;
}

Matrix correlation_sqrt(Index size, double rho) {
  if (size < 1) {
    throw InvalidParameter("correlation size must be >= 1");
  }
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw InvalidParameter("correlation coefficient rho must lie in [0, 1)");
  }
  if (rho == 0.0) {
    return Matrix::Identity(size, size);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(correlation_matrix(size, rho));
  if (eig.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of correlation matrix failed");
  }
  const Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Matrix root = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
  // Symmetrize away the round-off of the triple product.
  return 0.5 * (root + root.transpose());
}

Matrix generate_correlated_matrix(Index m, Index n, double rho, Rng& rng) {
  if (m < 1 || n < 1) {
    throw InvalidParameter("matrix dimensions must be >= 1");
  }
  return generate_correlated_matrix(correlation_sqrt(m, rho), correlation_sqrt(n, rho), rng);
}

Matrix generate_correlated_matrix(const Matrix& left_root, const Matrix& right_root,
                                  Rng& rng) {
  const Index m = left_root.rows();
  const Index n = right_root.rows();
  Matrix H(m, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      H(i, j) = rng.normal();
    }
  }
  Matrix A = left_root * H * right_root;
  A *= std::sqrt(static_cast<double>(n)) / A.norm();
  return A;
}

Vector generate_bg_signal(Index n, const PriorSpec& prior, Rng& rng) {
  prior.validate();
  const double slab_std = std::sqrt(prior.slab_var);
  Vector x(n);
  for (Index j = 0; j < n; ++j) {
    x(j) = rng.uniform() < prior.lambda ? slab_std * rng.normal() : 0.0;
  }
  return x;
}

double calibrate_noise(const Matrix& A, const Vector& x, double snr_db) {
  const double energy = (A * x).squaredNorm();
  if (!(energy > 0.0)) {
    throw DegenerateInput("cannot calibrate noise for a zero signal Ax");
  }
  return energy / (static_cast<double>(A.rows()) * std::pow(10.0, snr_db / 10.0));
}

Vector quantize(const Vector& v, const ChannelSpec& channel) {
  Vector y(v.size());
  switch (channel.kind) {
    case ChannelKind::onebit:
      for (Index i = 0; i < v.size(); ++i) {
        y(i) = v(i) >= 0.0 ? 1.0 : -1.0;
      }
      return y;
    case ChannelKind::multibit: {
      const auto& t = channel.thresholds;
      for (Index i = 0; i < v.size(); ++i) {
        // First threshold >= v gives the right-closed cell (t_{k-1}, t_k].
        y(i) = static_cast<double>(std::lower_bound(t.begin(), t.end(), v(i)) - t.begin());
      }
      return y;
    }
    case ChannelKind::gaussian:
      break;
  }
  throw UnsupportedOperation("gaussian channel does not quantize");
}

GlmProblem make_problem(const ProblemSpec& spec, Rng& rng, std::uint64_t seed) {
  return make_problem(spec, correlation_sqrt(spec.m, spec.rho),
                      correlation_sqrt(spec.n, spec.rho), rng, seed);
}

GlmProblem make_problem(const ProblemSpec& spec, const Matrix& left_root,
                        const Matrix& right_root, Rng& rng, std::uint64_t seed) {
  GlmProblem problem;
  problem.seed = seed;
  problem.rho = spec.rho;
  problem.prior = PriorSpec::bernoulli_gaussian(spec.lambda);
  problem.A = generate_correlated_matrix(left_root, right_root, rng);
  // Redraw an all-zero signal; it has no defined SNR.
  do {
    problem.x_true = generate_bg_signal(spec.n, problem.prior, rng);
  } while (problem.x_true.isZero(0.0));
  problem.z_true = problem.A * problem.x_true;
  problem.noise_var = calibrate_noise(problem.A, problem.x_true, spec.snr_db);
  const double noise_std = std::sqrt(problem.noise_var);

  Vector noisy(spec.m);
  for (Index i = 0; i < spec.m; ++i) {
    noisy(i) = problem.z_true(i) + noise_std * rng.normal();
  }

  switch (spec.channel) {
    case ChannelKind::gaussian:
      problem.channel = ChannelSpec::gaussian(noise_std);
      problem.y = noisy;
      break;
    case ChannelKind::onebit:
      problem.channel = ChannelSpec::onebit(noise_std);
      problem.y = quantize(noisy, problem.channel);
      break;
    case ChannelKind::multibit:
      problem.channel = spec.thresholds.empty()
                            ? ChannelSpec::twobit(noise_std)
                            : ChannelSpec::multibit(spec.thresholds, noise_std);
      problem.y = quantize(noisy, problem.channel);
      break;
  }
  return problem;
}

}  // namespace guamp
