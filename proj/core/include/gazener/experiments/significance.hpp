#pragma once

#include <span>

namespace gazener::experiments {

struct TTestResult {
  double mean_difference = 0.0;
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 0.5;
  bool significant = false;
};

// Paired one-sided t-test of H1: augmented > baseline over per-fold scores.
// Zero variance of the differences gives p = 0 (positive mean), 0.5 (zero
// mean) or 1 (negative mean). Throws std::invalid_argument for unequal
// lengths or fewer than two pairs.
TTestResult paired_one_sided_ttest(std::span<const double> baseline, std::span<const double> augmented,
                                   double alpha = 0.05);

// Upper tail P(T > t) of Student's t with `df` degrees of freedom.
double student_t_upper_tail(double t, int df);

}  // namespace gazener::experiments
