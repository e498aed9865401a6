#include "gazener/experiments/significance.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace gazener::experiments {

double student_t_upper_tail(double t, int df) {
  if (df < 1) throw std::invalid_argument("student_t_upper_tail: df must be >= 1");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const boost::math::students_t dist(static_cast<double>(df));
  return boost::math::cdf(boost::math::complement(dist, t));
}

TTestResult paired_one_sided_ttest(std::span<const double> baseline, std::span<const double> augmented,
                                   double alpha) {
  if (baseline.size() != augmented.size()) throw std::invalid_argument("t-test: samples differ in length");
  if (baseline.size() < 2) throw std::invalid_argument("t-test: at least two paired folds required");
  const auto n = static_cast<double>(baseline.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < baseline.size(); ++i) mean += augmented[i] - baseline[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const double d = augmented[i] - baseline[i] - mean;
    ss += d * d;
  }
  TTestResult result;
  result.mean_difference = mean;
  result.degrees_of_freedom = static_cast<int>(baseline.size()) - 1;
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) {
    result.t_statistic = mean > 0 ? INFINITY : (mean < 0 ? -INFINITY : 0.0);
    result.p_value = mean > 0 ? 0.0 : (mean < 0 ? 1.0 : 0.5);
  } else {
    result.t_statistic = mean / (sd / std::sqrt(n));
    result.p_value = student_t_upper_tail(result.t_statistic, result.degrees_of_freedom);
  }
  result.significant = result.p_value < alpha;
  return result;
}

}  // namespace gazener::experiments
