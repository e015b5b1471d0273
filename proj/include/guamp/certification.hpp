#pragma once

#include <string>
#include <vector>

namespace guamp {

// Worst agreement between a closed form and the quadrature oracle over one
// family of inputs. Relative error is |closed - oracle| / max(|oracle|, 1e-12).
struct FamilyReport {
  std::string family;
  std::size_t points = 0;
  double max_rel_error_first = 0.0;   // s_hat or x_hat
  double max_rel_error_second = 0.0;  // tau_s or tau_x
  std::string worst_case;
};

struct CertificationReport {
  std::vector<FamilyReport> families;
  double max_rel_error() const;
  bool passed(double tolerance = 1e-8) const { return max_rel_error() <= tolerance; }
};

double relative_error(double value, double reference);

// Grid: p_hat in {-5..5}, tau_p in {1e-3, 0.1, 1, 10}, sigma in {0.05, 0.5, 1},
// every cell of the one-bit and two-bit quantizers; Gaussian channel over
// y in {-3, -1, 0, 0.5, 2}; Bernoulli-Gaussian denoiser over r in {-6..6},
// tau_r in {1e-3, 0.1, 1, 10}, lambda in {0.1, 0.5, 1}, slab_var in {1, 10}.
CertificationReport run_certification();

}  // namespace guamp
