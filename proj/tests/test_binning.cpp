#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gazener/error.hpp"
#include "gazener/gaze/binning.hpp"

namespace gazener::gaze {
namespace {

std::vector<RawGazeVector> column(const std::vector<double>& values, std::size_t f = 0) {
  std::vector<RawGazeVector> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i][f] = values[i];
  return out;
}

int bin_of(const BinThresholds& t, double v, std::size_t f = 0) {
  return bin_value(v, t.cuts[f], t.bin_count);
}

TEST(FitBins, Quartiles) {
  const auto t = fit_bins(column({40, 10, 30, 20}), 4);
  EXPECT_EQ(bin_of(t, 10), 0);
  EXPECT_EQ(bin_of(t, 20), 1);
  EXPECT_EQ(bin_of(t, 30), 2);
  EXPECT_EQ(bin_of(t, 40), 3);
  EXPECT_EQ(bin_of(t, 5), 0);
  EXPECT_EQ(bin_of(t, 1000), 3);
}

TEST(FitBins, ConstantFeatureIsBinZero) {
  const auto t = fit_bins(column(std::vector<double>(100, 5.0)), 24);
  ASSERT_EQ(t.cuts[0].size(), 23u);
  for (const double c : t.cuts[0]) EXPECT_EQ(c, 5.0);
  EXPECT_EQ(bin_of(t, 5.0), 0);
  // An untouched feature (all zeros) behaves the same way.
  EXPECT_EQ(bin_of(t, 0.0, 3), 0);
}

TEST(FitBins, UnknownMapsToSentinel) {
  auto xs = column({1, 2, 3, 4});
  xs[0][1] = kUnknown;
  const auto t = fit_bins(xs, 4);
  EXPECT_EQ(bin_of(t, kUnknown), 4);
  const auto b = apply_bins(xs[0], t);
  EXPECT_EQ(b[1], 4);
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(BinnedGazeVector::all_unknown(24)[16], 24);
}

TEST(FitBins, Errors) {
  EXPECT_THROW(fit_bins(column({1, 2}), 1), std::invalid_argument);
  EXPECT_THROW(fit_bins(std::vector<RawGazeVector>{}, 24), std::invalid_argument);
}

TEST(FitBins, AllUnknownFeatureGetsZeroCuts) {
  auto xs = column({1, 2, 3});
  for (auto& v : xs) v[2] = kUnknown;
  const auto t = fit_bins(xs, 3);
  EXPECT_EQ(t.cuts[2], (std::vector<double>{0.0, 0.0}));
}

class BinningProperties : public ::testing::TestWithParam<int> {};

// Sample i draws N in [24, 5000] distinct values, some with heavy ties.
TEST_P(BinningProperties, MonotoneAndBalanced) {
  std::mt19937_64 rng(1000 + GetParam());
  constexpr int kBins = 24;
  const int n = std::uniform_int_distribution<int>(24, 5000)(rng);

  std::set<double> distinct;
  std::normal_distribution<double> normal(200.0, 80.0);
  while (static_cast<int>(distinct.size()) < n) distinct.insert(normal(rng));
  std::vector<double> values(distinct.begin(), distinct.end());
  std::shuffle(values.begin(), values.end(), rng);

  const auto t = fit_bins(column(values), kBins);
  ASSERT_TRUE(std::is_sorted(t.cuts[0].begin(), t.cuts[0].end()));

  std::vector<int> per_bin(kBins, 0);
  for (const double v : values) {
    const int b = bin_of(t, v);
    ASSERT_GE(b, 0);
    ASSERT_LT(b, kBins);
    ++per_bin[static_cast<std::size_t>(b)];
  }
  const auto [lo, hi] = std::minmax_element(per_bin.begin(), per_bin.end());
  EXPECT_LE(*hi - *lo, 1) << "n=" << n;

  // Monotone over the sorted sample and over probes off the sample.
  std::vector<double> probes = values;
  for (int i = 0; i < 500; ++i) probes.push_back(normal(rng) * 1.5);
  std::sort(probes.begin(), probes.end());
  for (std::size_t i = 1; i < probes.size(); ++i) {
    ASSERT_LE(bin_of(t, probes[i - 1]), bin_of(t, probes[i]));
  }
}

// Tied, rounded values: monotone, known values never hit the sentinel.
TEST_P(BinningProperties, MonotoneWithTies) {
  std::mt19937_64 rng(5000 + GetParam());
  const int n = std::uniform_int_distribution<int>(24, 5000)(rng);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::gamma_distribution<double> gamma(2.0, 60.0);
  for (auto& v : values) v = std::round(gamma(rng) / 10.0) * 10.0;
  const auto t = fit_bins(column(values), 24);
  std::sort(values.begin(), values.end());
  int prev = 0;
  for (const double v : values) {
    const int b = bin_of(t, v);
    ASSERT_GE(b, prev);
    ASSERT_LT(b, 24);
    prev = b;
  }
}

INSTANTIATE_TEST_SUITE_P(Samples, BinningProperties, ::testing::Range(0, 100));

TEST(Thresholds, RoundTripIsExact) {
  std::mt19937_64 rng(9);
  std::vector<RawGazeVector> xs(300);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (auto& v : xs) {
    for (auto& x : v.values) x = u(rng) / 3.0;
  }
  const auto t = fit_bins(xs, 24);
  std::stringstream ss;
  write_thresholds(ss, t);
  EXPECT_EQ(read_thresholds(ss), t);
}

TEST(Thresholds, ParseErrors) {
  const auto t = fit_bins(column({1, 2, 3, 4}), 4);
  std::stringstream ss;
  write_thresholds(ss, t);
  const std::string good = ss.str();

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_thresholds(in, "t.txt");
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("thresholds\t1\n"), ParseError);
  EXPECT_THROW(parse(good.substr(0, good.size() / 2)), ParseError);

  std::string unsorted = good;
  const auto pos = unsorted.find("n_fixations\t") + std::string("n_fixations\t").size();
  unsorted.replace(pos, 1, "9");
  EXPECT_THROW(parse(unsorted), ParseError);

  std::string renamed = good;
  renamed.replace(renamed.find("n_refixations"), 3, "xx_");
  EXPECT_THROW(parse(renamed), ParseError);
}

TEST(EmpiricalCdfTest, MidRank) {
  const auto cdf = fit_cdf(column({1, 2, 2, 3}));
  RawGazeVector v;
  v[0] = 2;
  EXPECT_DOUBLE_EQ(cdf.normalize(v)[0], 0.5);
  v[0] = 1;
  EXPECT_DOUBLE_EQ(cdf.normalize(v)[0], 0.125);
  v[0] = 0.5;
  EXPECT_DOUBLE_EQ(cdf.normalize(v)[0], 0.0);
  v[0] = 10;
  EXPECT_DOUBLE_EQ(cdf.normalize(v)[0], 1.0);
  v[0] = kUnknown;
  EXPECT_TRUE(is_unknown(cdf.normalize(v)[0]));
}

TEST(EmpiricalCdfTest, OrderPreserving) {
  std::mt19937_64 rng(4);
  std::vector<double> xs(1000);
  std::exponential_distribution<double> e(0.01);
  for (auto& x : xs) x = std::round(e(rng));
  const auto cdf = fit_cdf(column(xs));
  std::sort(xs.begin(), xs.end());
  double prev = -1.0;
  for (const double x : xs) {
    RawGazeVector v;
    v[0] = x;
    const double p = cdf.normalize(v)[0];
    ASSERT_GT(p, 0.0);
    ASSERT_LT(p, 1.0);
    ASSERT_GE(p, prev);
    prev = p;
  }
}

}  // namespace
}  // namespace gazener::gaze
