#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>

namespace gazener::gaze {

// The 17 reading measures, in the order of the feature table (basic, early,
// late, context). The order fixes the column order of every file format.
enum class Feature : std::size_t {
  NFixations = 0,
  FixationProbability,
  MeanFixationDuration,
  FirstFixationDuration,
  FirstPassDuration,
  TotalFixationDuration,
  NRefixations,
  RereadProbability,
  TotalRegressionFromDuration,
  PrevPrevFixationProbability,
  PrevFixationProbability,
  NextFixationProbability,
  NextNextFixationProbability,
  PrevPrevFixationDuration,
  PrevFixationDuration,
  NextFixationDuration,
  NextNextFixationDuration,
};

inline constexpr std::size_t kFeatureCount = 17;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "n_fixations",
    "fixation_probability",
    "mean_fixation_duration",
    "first_fixation_duration",
    "first_pass_duration",
    "total_fixation_duration",
    "n_refixations",
    "reread_probability",
    "total_regression_from_duration",
    "w-2_fixation_probability",
    "w-1_fixation_probability",
    "w+1_fixation_probability",
    "w+2_fixation_probability",
    "w-2_fixation_duration",
    "w-1_fixation_duration",
    "w+1_fixation_duration",
    "w+2_fixation_duration",
};

// Marker for a value that does not exist (context slot past the sentence
// boundary, or a type with no observation). Binned to the UNKNOWN sentinel.
inline constexpr double kUnknown = std::numeric_limits<double>::quiet_NaN();

inline bool is_unknown(double value) noexcept { return std::isnan(value); }

struct RawGazeVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](Feature f) noexcept { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const noexcept { return values[static_cast<std::size_t>(f)]; }
  double& operator[](std::size_t i) noexcept { return values[i]; }
  double operator[](std::size_t i) const noexcept { return values[i]; }

  static RawGazeVector all_unknown() noexcept;
};

// Bitwise equality: NaN markers compare equal to each other.
bool identical(const RawGazeVector& a, const RawGazeVector& b) noexcept;

// Checks the per-vector invariants (duration ordering, probability range,
// non-negativity). Unknown slots are ignored.
bool satisfies_invariants(const RawGazeVector& v) noexcept;

}  // namespace gazener::gaze
