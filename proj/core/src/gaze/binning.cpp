#include "gazener/gaze/binning.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::gaze {

BinnedGazeVector BinnedGazeVector::all_unknown(int bin_count) noexcept {
  BinnedGazeVector v;
  v.bins.fill(bin_count);
  return v;
}

BinThresholds fit_bins(std::span<const RawGazeVector> vectors, int bin_count) {
  if (bin_count < 2) throw std::invalid_argument("fit_bins: bin count must be at least 2");
  if (vectors.empty()) throw std::invalid_argument("fit_bins: no vectors");
  BinThresholds thresholds;
  thresholds.bin_count = bin_count;
  std::vector<double> values;
  values.reserve(vectors.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    values.clear();
    for (const auto& v : vectors) {
      if (!is_unknown(v[f])) values.push_back(v[f]);
    }
    auto& cuts = thresholds.cuts[f];
    cuts.assign(static_cast<std::size_t>(bin_count - 1), 0.0);
    if (values.empty()) continue;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const auto b = static_cast<std::size_t>(bin_count);
    for (std::size_t j = 1; j < b; ++j) {
      const std::size_t rank = (j * n + b - 1) / b;  // ceil(j n / B), 1-based
      cuts[j - 1] = values[std::max<std::size_t>(rank, 1) - 1];
    }
  }
  return thresholds;
}

int bin_value(double value, std::span<const double> cuts, int bin_count) noexcept {
  if (is_unknown(value)) return bin_count;
  const auto below = std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin();
  return std::min(static_cast<int>(below), bin_count - 1);
}

BinnedGazeVector apply_bins(const RawGazeVector& vector, const BinThresholds& thresholds) {
  BinnedGazeVector binned;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    binned[f] = bin_value(vector[f], thresholds.cuts[f], thresholds.bin_count);
  }
  return binned;
}

EmpiricalCdf fit_cdf(std::span<const RawGazeVector> vectors) {
  EmpiricalCdf cdf;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (const auto& v : vectors) {
      if (!is_unknown(v[f])) cdf.sorted[f].push_back(v[f]);
    }
    std::sort(cdf.sorted[f].begin(), cdf.sorted[f].end());
  }
  return cdf;
}

RawGazeVector EmpiricalCdf::normalize(const RawGazeVector& vector) const {
  RawGazeVector out;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const auto& xs = sorted[f];
    if (is_unknown(vector[f]) || xs.empty()) {
      out[f] = kUnknown;
      continue;
    }
    const auto [lo, hi] = std::equal_range(xs.begin(), xs.end(), vector[f]);
    const double below = static_cast<double>(lo - xs.begin());
    const double equal = static_cast<double>(hi - lo);
    out[f] = (below + 0.5 * equal) / static_cast<double>(xs.size());
  }
  return out;
}

void write_thresholds(std::ostream& out, const BinThresholds& thresholds) {
  out << "thresholds\t" << thresholds.bin_count << '\n';
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    out << kFeatureNames[f];
    for (const double c : thresholds.cuts[f]) out << '\t' << format_double(c);
    out << '\n';
  }
}

BinThresholds read_thresholds(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    do {
      if (!std::getline(in, line)) throw ParseError(source_name, line_no, "truncated thresholds block");
      ++line_no;
      strip_cr(line);
    } while (trim(line).empty());
  };
  next_line();
  auto head = split(line, '\t');
  const auto bins = head.size() == 2 && head[0] == "thresholds" ? parse_int(head[1]) : std::nullopt;
  if (!bins || *bins < 2) throw ParseError(source_name, line_no, "expected 'thresholds<TAB>B'");
  BinThresholds thresholds;
  thresholds.bin_count = static_cast<int>(*bins);
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    next_line();
    const auto fields = split(line, '\t');
    if (fields.empty() || fields[0] != kFeatureNames[f]) {
      throw ParseError(source_name, line_no, "expected thresholds for " + std::string(kFeatureNames[f]));
    }
    if (fields.size() != static_cast<std::size_t>(thresholds.bin_count)) {
      throw ParseError(source_name, line_no, "wrong number of cut points");
    }
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto value = parse_double(fields[k]);
      if (!value || is_unknown(*value)) throw ParseError(source_name, line_no, "bad cut point");
      if (!thresholds.cuts[f].empty() && *value < thresholds.cuts[f].back()) {
        throw ParseError(source_name, line_no, "cut points must be non-decreasing");
      }
      thresholds.cuts[f].push_back(*value);
    }
  }
  return thresholds;
}

}  // namespace gazener::gaze
