#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "gazener/corpus/fixation_file.hpp"
#include "gazener/gaze/measures.hpp"
#include "support.hpp"

namespace gazener::gaze {
namespace {

using Path = std::vector<Fixation>;

constexpr double kTol = 1e-12;

struct Expected {
  int n_fix;
  double first_fix;
  double first_pass;
  double total;
  int refix;
  bool reread;
  double regression_from;
};

void expect_measures(const Path& path, int word, int words, const Expected& e) {
  SCOPED_TRACE("word " + std::to_string(word));
  const auto m = reader_word_measures(path, word, words);
  EXPECT_EQ(m.fixated, e.n_fix > 0);
  EXPECT_EQ(m.n_fixations, e.n_fix);
  EXPECT_EQ(m.first_fixation_duration, e.first_fix);
  EXPECT_EQ(m.first_pass_duration, e.first_pass);
  EXPECT_EQ(m.total_duration, e.total);
  EXPECT_EQ(m.n_refixations, e.refix);
  EXPECT_EQ(m.reread, e.reread);
  EXPECT_EQ(m.regression_from_duration, e.regression_from);
}

// Fixture 1: the canonical trace with one regression.
TEST(ReaderMeasures, RegressionTrace) {
  const Path p{{0, 200}, {1, 150}, {0, 100}, {2, 180}};
  expect_measures(p, 0, 3, {2, 200, 200, 300, 1, true, 0});
  expect_measures(p, 1, 3, {1, 150, 150, 150, 0, false, 100});
  expect_measures(p, 2, 3, {1, 180, 180, 180, 0, false, 0});
}

TEST(ReaderMeasures, OutOfRangeWordThrows) {
  const Path p{{0, 200}, {1, 150}, {0, 100}, {2, 180}};
  EXPECT_THROW(reader_word_measures(p, 3, 3), std::out_of_range);
  EXPECT_THROW(reader_word_measures(p, -1, 3), std::out_of_range);
}

// Fixture 2: a skipped word yields the all-zero record.
TEST(ReaderMeasures, SkippedWord) {
  const Path p{{0, 200}, {2, 250}};
  expect_measures(p, 1, 3, {0, 0, 0, 0, 0, false, 0});
  expect_measures(p, 2, 3, {1, 250, 250, 250, 0, false, 0});
}

// Fixture 3: refixation inside the first pass.
TEST(ReaderMeasures, RefixationInFirstPass) {
  const Path p{{0, 100}, {0, 120}, {1, 90}};
  expect_measures(p, 0, 2, {2, 100, 220, 220, 1, true, 0});
  expect_measures(p, 1, 2, {1, 90, 90, 90, 0, false, 0});
}

// Fixture 4: a return to the word after the first pass ended.
TEST(ReaderMeasures, SecondPassNotInFirstPass) {
  const Path p{{1, 100}, {1, 50}, {2, 80}, {1, 70}};
  expect_measures(p, 1, 3, {3, 100, 150, 220, 2, true, 0});
  expect_measures(p, 2, 3, {1, 80, 80, 80, 0, false, 70});
  expect_measures(p, 0, 3, {0, 0, 0, 0, 0, false, 0});
}

// Fixture 5: a regression spanning several earlier words.
TEST(ReaderMeasures, LongRegression) {
  const Path p{{0, 100}, {1, 100}, {2, 200}, {0, 50}, {1, 60}, {3, 90}};
  expect_measures(p, 2, 4, {1, 200, 200, 200, 0, false, 110});
  expect_measures(p, 1, 4, {2, 100, 100, 160, 1, true, 0});
  expect_measures(p, 0, 4, {2, 100, 100, 150, 1, true, 0});
  expect_measures(p, 3, 4, {1, 90, 90, 90, 0, false, 0});
}

// Fixture 6: the regression ends when the reader lands back on the word itself.
TEST(ReaderMeasures, RegressionEndsOnSameWord) {
  const Path p{{0, 100}, {1, 100}, {0, 40}, {0, 30}, {1, 50}};
  expect_measures(p, 1, 2, {2, 100, 100, 150, 1, true, 70});
  expect_measures(p, 0, 2, {3, 100, 100, 170, 2, true, 0});
}

// Fixture 7: two separate regressions from the same word add up.
TEST(ReaderMeasures, TwoRegressionsFromOneWord) {
  const Path p{{2, 100}, {0, 20}, {2, 30}, {1, 40}, {3, 50}};
  expect_measures(p, 2, 4, {2, 100, 100, 130, 1, true, 60});
  expect_measures(p, 0, 4, {1, 20, 20, 20, 0, false, 0});
}

// Fixture 8: single-word sentence with a refixation and no context.
TEST(ReaderMeasures, SingleWordSentence) {
  const Path p{{0, 230}, {0, 70}};
  expect_measures(p, 0, 1, {2, 230, 300, 300, 1, true, 0});
  const auto r = reader_word_measures(p, 0, 1);
  const std::vector<ReaderWordMeasures> recs{r};
  const std::vector<RawGazeVector> local{average_readers(recs, 1)};
  const auto full = add_context_features(local);
  ASSERT_EQ(full.size(), 1u);
  for (std::size_t f = 9; f < kFeatureCount; ++f) EXPECT_TRUE(is_unknown(full[0][f])) << f;
  EXPECT_EQ(full[0][Feature::MeanFixationDuration], 150.0);
}

// Fixture 9: empty scan path (reader skipped the sentence).
TEST(ReaderMeasures, EmptyScanPath) {
  const Path p;
  expect_measures(p, 0, 2, {0, 0, 0, 0, 0, false, 0});
}

TEST(AverageReaders, FixationProbability) {
  std::vector<ReaderWordMeasures> recs(10);
  for (int i = 0; i < 4; ++i) recs[i] = reader_word_measures(Path{{0, 100}}, 0, 1);
  const auto v = average_readers(recs, 10);
  EXPECT_NEAR(v[Feature::FixationProbability], 0.4, kTol);
}

TEST(AverageReaders, TwoReadersOneFixationEach) {
  const std::vector<ReaderWordMeasures> recs{reader_word_measures(Path{{0, 200}}, 0, 1),
                                             reader_word_measures(Path{{0, 100}}, 0, 1)};
  const auto v = average_readers(recs, 2);
  EXPECT_NEAR(v[Feature::MeanFixationDuration], 150.0, kTol);
  EXPECT_NEAR(v[Feature::TotalFixationDuration], 150.0, kTol);
  EXPECT_EQ(v[Feature::FixationProbability], 1.0);
  EXPECT_EQ(v[Feature::NFixations], 1.0);
}

TEST(AverageReaders, NobodyFixates) {
  const std::vector<ReaderWordMeasures> recs(3);
  const auto v = average_readers(recs, 3);
  for (std::size_t f = 0; f < 9; ++f) EXPECT_EQ(v[f], 0.0) << kFeatureNames[f];
}

TEST(AverageReaders, RejectsBadReaderCount) {
  const std::vector<ReaderWordMeasures> recs(3);
  EXPECT_THROW(average_readers(recs, 0), std::invalid_argument);
  EXPECT_THROW(average_readers(recs, 2), std::invalid_argument);
}

// Fixture 10: three readers, one of them skipping; durations average over
// fixating readers only.
TEST(AverageReaders, MixedReaders) {
  const std::vector<ReaderWordMeasures> recs{
      reader_word_measures(Path{{0, 200}, {0, 100}}, 0, 2),
      reader_word_measures(Path{{0, 150}, {1, 90}}, 0, 2),
      reader_word_measures(Path{{1, 120}}, 0, 2),
  };
  const auto v = average_readers(recs, 3);
  EXPECT_NEAR(v[Feature::NFixations], 1.5, kTol);
  EXPECT_NEAR(v[Feature::FixationProbability], 2.0 / 3.0, kTol);
  EXPECT_NEAR(v[Feature::MeanFixationDuration], 150.0, kTol);
  EXPECT_NEAR(v[Feature::FirstFixationDuration], 175.0, kTol);
  EXPECT_NEAR(v[Feature::FirstPassDuration], 225.0, kTol);
  EXPECT_NEAR(v[Feature::TotalFixationDuration], 225.0, kTol);
  EXPECT_NEAR(v[Feature::NRefixations], 0.5, kTol);
  EXPECT_NEAR(v[Feature::RereadProbability], 1.0 / 3.0, kTol);
  EXPECT_EQ(v[Feature::TotalRegressionFromDuration], 0.0);
}

TEST(ContextFeatures, ThreeWords) {
  std::vector<RawGazeVector> local(3);
  for (int i = 0; i < 3; ++i) {
    local[i][Feature::FixationProbability] = 0.1 * (i + 1);
    local[i][Feature::MeanFixationDuration] = 100.0 * (i + 1);
  }
  const auto out = add_context_features(local);
  EXPECT_EQ(out[1][Feature::PrevFixationProbability], 0.1);
  EXPECT_EQ(out[1][Feature::PrevFixationDuration], 100.0);
  EXPECT_EQ(out[1][Feature::NextFixationProbability], 0.30000000000000004);
  EXPECT_EQ(out[1][Feature::NextFixationDuration], 300.0);
  EXPECT_TRUE(is_unknown(out[1][Feature::PrevPrevFixationProbability]));
  EXPECT_TRUE(is_unknown(out[1][Feature::NextNextFixationDuration]));
  EXPECT_TRUE(is_unknown(out[0][Feature::PrevFixationProbability]));
  EXPECT_TRUE(is_unknown(out[0][Feature::PrevPrevFixationDuration]));
  EXPECT_EQ(out[0][Feature::NextNextFixationProbability], 0.30000000000000004);
  EXPECT_EQ(out[2][Feature::PrevPrevFixationDuration], 100.0);
  EXPECT_TRUE(is_unknown(out[2][Feature::NextFixationDuration]));
  // Word-local slots pass through untouched.
  for (int i = 0; i < 3; ++i) EXPECT_EQ(out[i][Feature::MeanFixationDuration], 100.0 * (i + 1));
}

// Fixture 11: the full pipeline from fixation events, two readers.
TEST(SentenceFeatures, FromEvents) {
  const auto s = fixtures::sentence_of({{"a", corpus::Tag::O}, {"b", corpus::Tag::O}, {"c", corpus::Tag::O}}, 4);
  corpus::FixationData data;
  auto events = [](const std::string& r, const Path& p) {
    std::vector<corpus::FixationEvent> ev;
    for (std::size_t i = 0; i < p.size(); ++i) {
      ev.push_back({r, 4, p[i].word, static_cast<int>(i), p[i].duration_ms});
    }
    return ev;
  };
  data.add_sequence("r1", 4, events("r1", {{0, 200}, {1, 150}, {0, 100}, {2, 180}}));
  data.add_sequence("r2", 4, events("r2", {{0, 120}, {2, 240}}));
  const auto out = sentence_group_features(s, data);
  ASSERT_EQ(out.size(), 3u);
  // w0: r1 n=2 total 300, r2 n=1 total 120.
  EXPECT_NEAR(out[0][Feature::NFixations], 1.5, kTol);
  EXPECT_NEAR(out[0][Feature::MeanFixationDuration], (150.0 + 120.0) / 2, kTol);
  EXPECT_NEAR(out[0][Feature::TotalFixationDuration], 210.0, kTol);
  EXPECT_NEAR(out[0][Feature::RereadProbability], 0.5, kTol);
  // w1: only r1.
  EXPECT_NEAR(out[1][Feature::FixationProbability], 0.5, kTol);
  EXPECT_NEAR(out[1][Feature::TotalRegressionFromDuration], 100.0, kTol);
  EXPECT_NEAR(out[1][Feature::PrevFixationDuration], 135.0, kTol);
  EXPECT_NEAR(out[1][Feature::NextFixationDuration], 210.0, kTol);
  EXPECT_NEAR(out[0][Feature::NextFixationProbability], 0.5, kTol);
  EXPECT_NEAR(out[0][Feature::NextNextFixationProbability], 1.0, kTol);
}

// A reader who never saw the sentence still counts in the denominator.
TEST(SentenceFeatures, AbsentReaderCountsAsSkipping) {
  const auto s0 = fixtures::sentence_of({{"a", corpus::Tag::O}}, 0);
  corpus::FixationData data;
  data.add_sequence("r1", 0, {{"r1", 0, 0, 0, 100.0}});
  data.add_sequence("r2", 1, {{"r2", 1, 0, 0, 100.0}});
  const auto out = sentence_group_features(s0, data);
  EXPECT_NEAR(out[0][Feature::FixationProbability], 0.5, kTol);
  EXPECT_NEAR(out[0][Feature::TotalFixationDuration], 100.0, kTol);
}

Path random_path(std::mt19937_64& rng, int words) {
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> word(0, words - 1);
  std::uniform_int_distribution<int> dur(50, 400);
  Path p(static_cast<std::size_t>(len(rng)));
  for (auto& f : p) f = {word(rng), static_cast<double>(dur(rng))};
  return p;
}

TEST(MeasureProperties, PerReaderOrdering) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int words = 1 + static_cast<int>(rng() % 6);
    const auto p = random_path(rng, words);
    for (int w = 0; w < words; ++w) {
      const auto m = reader_word_measures(p, w, words);
      ASSERT_LE(m.first_fixation_duration, m.first_pass_duration);
      ASSERT_LE(m.first_pass_duration, m.total_duration);
      ASSERT_GE(m.first_fixation_duration, 0.0);
      ASSERT_EQ(m.n_refixations, std::max(m.n_fixations - 1, 0));
      ASSERT_EQ(m.reread, m.n_fixations >= 2);
    }
  }
}

TEST(MeasureProperties, AveragingPermutationAndDuplication) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int words = 1 + static_cast<int>(rng() % 5);
    const int readers = 1 + static_cast<int>(rng() % 6);
    std::vector<ReaderWordMeasures> recs;
    for (int r = 0; r < readers; ++r) recs.push_back(reader_word_measures(random_path(rng, words), 0, words));
    const auto base = average_readers(recs, readers);
    ASSERT_TRUE(satisfies_invariants(base));

    auto shuffled = recs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto perm = average_readers(shuffled, readers);

    auto doubled = recs;
    doubled.insert(doubled.end(), recs.begin(), recs.end());
    const auto dup = average_readers(doubled, 2 * readers);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      ASSERT_NEAR(perm[f], base[f], kTol) << kFeatureNames[f];
      ASSERT_NEAR(dup[f], base[f], kTol) << kFeatureNames[f];
    }
  }
}

}  // namespace
}  // namespace gazener::gaze
