#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sinrsim {

enum class ScalingLaw {
  d_log2_squared,       // rounds ~ D * log2^2 n
  d_log_plus_log2,      // rounds ~ D * log2 n + log2^2 n
};

double scaling_predictor(ScalingLaw law, int diameter, int n);

/// Completion rounds of one (D, n) sweep cell.
struct SweepGroup {
  int diameter = 0;
  int n = 0;
  std::vector<std::int64_t> rounds;
};

struct ScalingFit {
  double coefficient = 0.0;   // least squares through the origin
  double r_squared = 0.0;
  std::vector<double> loo_coefficients;  // leave-one-out refits
  bool stable_within_factor2 = false;
  std::string report;
};

/// Fits median completion rounds against the law's predictor. Medians, not
/// means: whp bounds control tails poorly at desk scale. Requires >= 3
/// distinct diameters.
ScalingFit fit_scaling(const std::vector<SweepGroup>& groups, ScalingLaw law);

double median(std::vector<double> xs);

}  // namespace sinrsim
