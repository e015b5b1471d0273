#include "guamp/certification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "guamp/channels.hpp"
#include "guamp/denoiser.hpp"
#include "guamp/oracle.hpp"

namespace guamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const double kTauGrid[] = {1e-3, 0.1, 1.0, 10.0};
const double kSigmaGrid[] = {0.05, 0.5, 1.0};

void record(FamilyReport& report, double first, double first_ref, double second,
            double second_ref, const std::string& label) {
  ++report.points;
  const double e1 = relative_error(first, first_ref);
  const double e2 = relative_error(second, second_ref);
  if (std::max(e1, e2) > std::max(report.max_rel_error_first, report.max_rel_error_second)) {
    report.worst_case = label;
  }
  report.max_rel_error_first = std::max(report.max_rel_error_first, e1);
  report.max_rel_error_second = std::max(report.max_rel_error_second, e2);
}

FamilyReport certify_cells(const std::string& family, const std::vector<Interval>& cells) {
  FamilyReport report;
  report.family = family;
  for (const Interval& cell : cells) {
    for (int p = -5; p <= 5; ++p) {
      for (double tau : kTauGrid) {
        for (double sigma : kSigmaGrid) {
          const double p_hat = p;
          const OutputMoments closed = gout_interval(p_hat, cell, tau, sigma);
          const OutputMoments ref =
              oracle::output_moments(oracle::IntervalChannelQuery{p_hat, cell, tau, sigma});
          std::ostringstream label;
          label << "cell=(" << cell.lower << "," << cell.upper << "] p_hat=" << p_hat
                << " tau_p=" << tau << " sigma=" << sigma;
          record(report, closed.s_hat, ref.s_hat, closed.tau_s, ref.tau_s, label.str());
        }
      }
    }
  }
  return report;
}

FamilyReport certify_gaussian() {
  FamilyReport report;
  report.family = "gout_gaussian";
  for (double y : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    for (int p = -5; p <= 5; ++p) {
      for (double tau : kTauGrid) {
        for (double sigma : kSigmaGrid) {
          const double sigma2 = sigma * sigma;
          const OutputMoments closed = gout_gaussian(p, y, tau, sigma2);
          const OutputMoments ref =
              oracle::output_moments(oracle::GaussianChannelQuery{double(p), y, tau, sigma2});
          std::ostringstream label;
          label << "y=" << y << " p_hat=" << p << " tau_p=" << tau << " sigma2=" << sigma2;
          record(report, closed.s_hat, ref.s_hat, closed.tau_s, ref.tau_s, label.str());
        }
      }
    }
  }
  return report;
}

FamilyReport certify_denoiser() {
  FamilyReport report;
  report.family = "bg_denoiser";
  for (double lambda : {0.1, 0.5, 1.0}) {
    for (double slab : {1.0, 10.0}) {
      const PriorSpec prior{lambda, slab};
      for (int r = -6; r <= 6; ++r) {
        for (double tau : kTauGrid) {
          const DenoiserMoments closed = bg_denoiser(r, tau, prior);
          const DenoiserMoments ref =
              oracle::denoiser_moments(oracle::BgPriorQuery{double(r), tau, prior});
          std::ostringstream label;
          label << "lambda=" << lambda << " slab_var=" << slab << " r=" << r << " tau_r=" << tau;
          record(report, closed.x_hat, ref.x_hat, closed.tau_x, ref.tau_x, label.str());
        }
      }
    }
  }
  return report;
}

}  // namespace

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-12);
}

double CertificationReport::max_rel_error() const {
  double worst = 0.0;
  for (const auto& f : families) {
    worst = std::max({worst, f.max_rel_error_first, f.max_rel_error_second});
  }
  return worst;
}

CertificationReport run_certification() {
  CertificationReport report;
  report.families.push_back(certify_gaussian());
  report.families.push_back(
      certify_cells("gout_interval/onebit", {{-kInf, 0.0}, {0.0, kInf}}));
  report.families.push_back(certify_cells(
      "gout_interval/twobit", {{-kInf, -1.5}, {-1.5, 0.0}, {0.0, 1.5}, {1.5, kInf}}));
  report.families.push_back(certify_denoiser());
  return report;
}

}  // namespace guamp
