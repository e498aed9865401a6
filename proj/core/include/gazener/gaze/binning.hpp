#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <span>
#include <vector>

#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::gaze {

inline constexpr int kDefaultBinCount = 24;

// Bin indices of the 17 features. Index `bin_count` is the UNKNOWN sentinel.
struct BinnedGazeVector {
  std::array<int, kFeatureCount> bins{};

  int operator[](std::size_t i) const noexcept { return bins[i]; }
  int& operator[](std::size_t i) noexcept { return bins[i]; }
  bool operator==(const BinnedGazeVector&) const = default;

  static BinnedGazeVector all_unknown(int bin_count) noexcept;
};

// Per feature, bin_count-1 non-decreasing cut points.
struct BinThresholds {
  int bin_count = kDefaultBinCount;
  std::array<std::vector<double>, kFeatureCount> cuts;

  bool operator==(const BinThresholds&) const = default;
};

// Cut j (j = 1..B-1) is the empirical j/B quantile x_(ceil(j*n/B)) of the
// feature's known values. A feature with no known value gets all-zero cuts.
// Throws std::invalid_argument if bin_count < 2 or `vectors` is empty.
BinThresholds fit_bins(std::span<const RawGazeVector> vectors, int bin_count = kDefaultBinCount);

// Number of cut points strictly below `value`, capped at B-1; unknown -> B.
int bin_value(double value, std::span<const double> cuts, int bin_count) noexcept;

BinnedGazeVector apply_bins(const RawGazeVector& vector, const BinThresholds& thresholds);

// Per-feature empirical CDF of a corpus. normalize() maps each known value to
// its mid-rank (count below + half the count equal) / n, in (0, 1); unknown
// values stay unknown. This is the corpus-normalized value that type
// aggregation averages.
struct EmpiricalCdf {
  std::array<std::vector<double>, kFeatureCount> sorted;

  RawGazeVector normalize(const RawGazeVector& vector) const;
};

EmpiricalCdf fit_cdf(std::span<const RawGazeVector> vectors);

void write_thresholds(std::ostream& out, const BinThresholds& thresholds);
// Reads the block produced by write_thresholds. Throws ParseError.
BinThresholds read_thresholds(std::istream& in, const std::string& source_name = "<stream>");

}  // namespace gazener::gaze
