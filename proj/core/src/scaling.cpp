#include "sinrsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sinrsim/errors.hpp"

namespace sinrsim {

double scaling_predictor(ScalingLaw law, int diameter, int n) {
  const double log2n = std::max(1.0, std::log2(static_cast<double>(n)));
  switch (law) {
    case ScalingLaw::d_log2_squared:
      return diameter * log2n * log2n;
    case ScalingLaw::d_log_plus_log2:
      return diameter * log2n + log2n * log2n;
  }
  return 0.0;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw InvalidInputError("median of empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

namespace {

double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  if (sxx == 0.0) throw InvalidInputError("degenerate predictor values");
  return sxy / sxx;
}

}  // namespace

ScalingFit fit_scaling(const std::vector<SweepGroup>& groups, ScalingLaw law) {
  std::set<int> diameters;
  for (const auto& g : groups) diameters.insert(g.diameter);
  if (diameters.size() < 3) {
    throw InvalidInputError("fit_scaling requires at least 3 distinct diameters");
  }

  std::vector<double> x, y;
  for (const auto& g : groups) {
    std::vector<double> rounds(g.rounds.begin(), g.rounds.end());
    x.push_back(scaling_predictor(law, g.diameter, g.n));
    y.push_back(median(rounds));
  }

  ScalingFit fit;
  fit.coefficient = fit_through_origin(x, y);

  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - fit.coefficient * x[i];
    ss_res += e * e;
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

  for (std::size_t skip = 0; skip < x.size(); ++skip) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != skip) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
      }
    }
    fit.loo_coefficients.push_back(fit_through_origin(xs, ys));
  }
  double lo = fit.loo_coefficients[0], hi = fit.loo_coefficients[0];
  for (double c : fit.loo_coefficients) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  fit.stable_within_factor2 = lo > 0.0 && hi / lo <= 2.0;

  std::ostringstream report;
  report << "coefficient=" << fit.coefficient << " r2=" << fit.r_squared
         << " loo=[";
  for (std::size_t i = 0; i < fit.loo_coefficients.size(); ++i) {
    report << (i ? " " : "") << fit.loo_coefficients[i];
  }
  report << "] stable2x=" << (fit.stable_within_factor2 ? "yes" : "no");
  fit.report = report.str();
  return fit;
}

}  // namespace sinrsim
