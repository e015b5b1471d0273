#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "guamp/rng.hpp"
#include "guamp/types.hpp"

namespace guamp {

enum class ChannelKind { gaussian, onebit, multibit };

std::string_view to_string(ChannelKind kind);

// Half-open cell (lower, upper]; either end may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

// Componentwise measurement channel y_i = f(z_i + w_i), w_i ~ N(0, noise_std^2).
struct ChannelSpec {
  ChannelKind kind = ChannelKind::gaussian;
  std::vector<double> thresholds;  // multibit only, strictly ascending
  double noise_std = 1.0;

  static ChannelSpec gaussian(double noise_std);
  // y = sign(v), sign(0) = +1.
  static ChannelSpec onebit(double noise_std);
  static ChannelSpec multibit(std::vector<double> thresholds, double noise_std);
  // Two-bit uniform quantizer with thresholds {-1.5, 0, 1.5}.
  static ChannelSpec twobit(double noise_std);

  void validate() const;

  // Likelihood cell that observation y selects. Gaussian channels have no cells.
  Interval cell(double y) const;
  // Number of cells (K + 1 for K thresholds, 2 for onebit).
  Index num_cells() const;
};

// Bernoulli-Gaussian prior (1 - lambda) delta(x) + lambda N(x; 0, slab_var).
struct PriorSpec {
  double lambda = 0.1;
  double slab_var = 10.0;

  // slab_var = 1 / lambda, which makes E[x^2] = 1.
  static PriorSpec bernoulli_gaussian(double lambda);
  void validate() const;
  double variance() const { return lambda * slab_var; }
};

struct GlmProblem {
  Matrix A;
  Vector x_true;
  Vector z_true;
  Vector y;  // +-1 (onebit), cell index (multibit) or reals (gaussian)
  ChannelSpec channel;
  PriorSpec prior;
  double noise_var = 1.0;
  std::uint64_t seed = 0;
  double rho = 0.0;
};

// (R)_ij = rho^|i-j|.
Matrix correlation_matrix(Index size, double rho);

// Symmetric PSD square root of correlation_matrix(size, rho) via
// eigendecomposition; negative round-off eigenvalues are clipped at zero.
Matrix correlation_sqrt(Index size, double rho);

// R1^{1/2} H R2^{1/2} with H i.i.d. N(0,1) (drawn in column-major order),
// rescaled so that ||A||_F^2 = n.
Matrix generate_correlated_matrix(Index m, Index n, double rho, Rng& rng);

// Same draw, with the two roots precomputed (they depend only on m, n, rho).
Matrix generate_correlated_matrix(const Matrix& left_root, const Matrix& right_root,
                                  Rng& rng);

Vector generate_bg_signal(Index n, const PriorSpec& prior, Rng& rng);

// sigma^2 = ||Ax||^2 / (m 10^{snr_db/10}).
double calibrate_noise(const Matrix& A, const Vector& x, double snr_db);

Vector quantize(const Vector& v, const ChannelSpec& channel);

struct ProblemSpec {
  Index m = 64;
  Index n = 16;
  double rho = 0.0;
  double snr_db = 20.0;
  ChannelKind channel = ChannelKind::onebit;
  std::vector<double> thresholds;  // multibit only; empty means {-1.5, 0, 1.5}
  double lambda = 0.1;
};

// Draws A, x, w in that order from rng and assembles the observations.
GlmProblem make_problem(const ProblemSpec& spec, Rng& rng, std::uint64_t seed = 0);

GlmProblem make_problem(const ProblemSpec& spec, const Matrix& left_root,
                        const Matrix& right_root, Rng& rng, std::uint64_t seed = 0);

}  // namespace guamp
