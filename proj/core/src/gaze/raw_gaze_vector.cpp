#include "gazener/gaze/raw_gaze_vector.hpp"

#include <cstring>

namespace gazener::gaze {

RawGazeVector RawGazeVector::all_unknown() noexcept {
  RawGazeVector v;
  v.values.fill(kUnknown);
  return v;
}

bool identical(const RawGazeVector& a, const RawGazeVector& b) noexcept {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_unknown(a[i]) != is_unknown(b[i])) return false;
    if (!is_unknown(a[i]) && std::memcmp(&a.values[i], &b.values[i], sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

bool satisfies_invariants(const RawGazeVector& v) noexcept {
  const auto known = [&](Feature f) { return !is_unknown(v[f]); };
  constexpr Feature probabilities[] = {
      Feature::FixationProbability,         Feature::RereadProbability,
      Feature::PrevPrevFixationProbability, Feature::PrevFixationProbability,
      Feature::NextFixationProbability,     Feature::NextNextFixationProbability,
  };
  for (const Feature f : probabilities) {
    if (known(f) && (v[f] < 0.0 || v[f] > 1.0)) return false;
  }
  constexpr Feature non_negative[] = {
      Feature::NFixations,           Feature::MeanFixationDuration,
      Feature::FirstFixationDuration, Feature::FirstPassDuration,
      Feature::TotalFixationDuration, Feature::NRefixations,
      Feature::TotalRegressionFromDuration, Feature::PrevPrevFixationDuration,
      Feature::PrevFixationDuration,  Feature::NextFixationDuration,
      Feature::NextNextFixationDuration,
  };
  for (const Feature f : non_negative) {
    if (known(f) && v[f] < 0.0) return false;
  }
  if (known(Feature::TotalFixationDuration) && known(Feature::FirstPassDuration) &&
      v[Feature::TotalFixationDuration] < v[Feature::FirstPassDuration]) {
    return false;
  }
  if (known(Feature::FirstPassDuration) && known(Feature::FirstFixationDuration) &&
      v[Feature::FirstPassDuration] < v[Feature::FirstFixationDuration]) {
    return false;
  }
  return true;
}

}  // namespace gazener::gaze
