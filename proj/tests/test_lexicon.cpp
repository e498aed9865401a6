#include <gtest/gtest.h>

#include <cstring>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gazener/error.hpp"
#include "gazener/gaze/featurize.hpp"
#include "gazener/gaze/lexicon.hpp"
#include "support.hpp"

namespace gazener::gaze {
namespace {

RawGazeVector filled(double nfix) {
  RawGazeVector v;
  v.values.fill(0.25);
  v[Feature::NFixations] = nfix;
  return v;
}

TEST(TypeLexiconTest, IslandIsAveraged) {
  const std::vector<CorpusOccurrences> corpora{{"a", {{"Island", filled(2.0)}, {"island", filled(4.0)}}}};
  const auto lex = build_type_lexicon(corpora, 4);
  ASSERT_EQ(lex.entries.size(), 1u);
  EXPECT_EQ(lex.entries.at("island")[Feature::NFixations], 3.0);
}

TEST(TypeLexiconTest, MeanOfThreeAndSingleton) {
  const std::vector<CorpusOccurrences> corpora{
      {"a", {{"x", filled(1.0)}, {"y", filled(7.5)}}},
      {"b", {{"X", filled(2.0)}, {"x", filled(6.0)}}},
  };
  const auto lex = build_type_lexicon(corpora, 4);
  EXPECT_EQ(lex.entries.at("x")[Feature::NFixations], 3.0);
  EXPECT_TRUE(identical(lex.entries.at("y"), filled(7.5)));
  EXPECT_EQ(lex.source_corpora, (std::vector<std::string>{"a", "b"}));
}

TEST(TypeLexiconTest, UnknownSlotsAverageOverKnownOnly) {
  auto a = filled(1.0);
  auto b = filled(3.0);
  a[Feature::PrevFixationProbability] = kUnknown;
  b[Feature::PrevFixationProbability] = 0.5;
  auto c = filled(2.0);
  c[Feature::NextFixationDuration] = kUnknown;
  const std::vector<CorpusOccurrences> corpora{{"a", {{"w", a}, {"w", b}, {"v", c}}}};
  const auto lex = build_type_lexicon(corpora, 4);
  EXPECT_EQ(lex.entries.at("w")[Feature::PrevFixationProbability], 0.5);
  EXPECT_TRUE(is_unknown(lex.entries.at("v")[Feature::NextFixationDuration]));
  EXPECT_EQ(lookup_type_features("v", lex)[static_cast<std::size_t>(Feature::NextFixationDuration)], 4);
}

TEST(TypeLexiconTest, EmptyInputThrows) {
  EXPECT_THROW(build_type_lexicon(std::vector<CorpusOccurrences>{}), std::invalid_argument);
  EXPECT_THROW(build_type_lexicon(std::vector<CorpusOccurrences>{{"a", {}}}), std::invalid_argument);
}

TEST(TypeLexiconTest, LookupIsCaseInsensitive) {
  const std::vector<CorpusOccurrences> corpora{
      {"a", {{"island", filled(2.0)}, {"sea", filled(5.0)}, {"Rock", filled(9.0)}}}};
  const auto lex = build_type_lexicon(corpora, 4);
  EXPECT_EQ(lookup_type_features("ISLAND", lex), lookup_type_features("island", lex));
  EXPECT_EQ(lookup_type_features("rOcK", lex), lookup_type_features("rock", lex));
  EXPECT_NE(lookup_type_features("island", lex), BinnedGazeVector::all_unknown(4));
  EXPECT_TRUE(lex.entries.contains("rock"));
  EXPECT_FALSE(lex.entries.contains("Rock"));
}

TEST(TypeLexiconTest, MissIsAllUnknown) {
  const std::vector<CorpusOccurrences> corpora{{"a", {{"island", filled(2.0)}}}};
  const auto lex = build_type_lexicon(corpora, 24);
  const auto b = lookup_type_features("volcano", lex);
  for (const int x : b.bins) EXPECT_EQ(x, 24);
  const auto e = TypeLexicon::empty(24);
  EXPECT_EQ(lookup_type_features("island", e), BinnedGazeVector::all_unknown(24));
}

TEST(TypeLexiconTest, Coverage) {
  const std::vector<CorpusOccurrences> corpora{{"a", {{"the", filled(1.0)}, {"Island", filled(1.0)}}}};
  const auto lex = build_type_lexicon(corpora, 4);
  using corpus::Tag;
  const std::vector<corpus::Sentence> s{
      fixtures::sentence_of({{"The", Tag::O}, {"island", Tag::BeginLocation}, {"is", Tag::O}, {"far", Tag::O}})};
  EXPECT_DOUBLE_EQ(lexicon_coverage(s, lex), 0.5);
  EXPECT_EQ(lexicon_coverage(std::vector<corpus::Sentence>{}, lex), 0.0);
}

std::string random_case(std::mt19937_64& rng, const std::string& w) {
  std::string out = w;
  for (auto& c : out) {
    if (rng() % 3 == 0) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

// Group-by-mean written independently of the library: collect every value,
// then divide.
TEST(TypeLexiconTest, MatchesGroupByMeanOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int vocab = 1 + static_cast<int>(rng() % 400);
    std::vector<std::string> words;
    for (int i = 0; i < vocab; ++i) words.push_back("w" + std::to_string(i) + "ab");
    std::uniform_real_distribution<double> u(0.0, 1.0);

    std::vector<CorpusOccurrences> corpora;
    const int n_corpora = 1 + static_cast<int>(rng() % 3);
    std::size_t total = 0;
    for (int c = 0; c < n_corpora; ++c) {
      CorpusOccurrences occ{"c" + std::to_string(c), {}};
      const std::size_t n = 1 + rng() % 3333;
      for (std::size_t i = 0; i < n; ++i) {
        RawGazeVector v;
        for (auto& x : v.values) x = rng() % 10 == 0 ? kUnknown : u(rng);
        occ.tokens.push_back({random_case(rng, words[rng() % words.size()]), v});
      }
      total += n;
      corpora.push_back(std::move(occ));
    }
    ASSERT_LE(total, 10000u);

    std::map<std::string, std::array<std::vector<double>, kFeatureCount>> groups;
    for (const auto& c : corpora) {
      for (const auto& t : c.tokens) {
        std::string key;
        for (const char ch : t.surface) key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        auto& g = groups[key];
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
          if (!std::isnan(t.values[f])) g[f].push_back(t.values[f]);
        }
      }
    }

    const auto lex = build_type_lexicon(corpora, 24);
    ASSERT_EQ(lex.entries.size(), groups.size());
    for (const auto& [key, g] : groups) {
      const auto it = lex.entries.find(key);
      ASSERT_NE(it, lex.entries.end()) << key;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (g[f].empty()) {
          ASSERT_TRUE(std::isnan(it->second[f]));
          continue;
        }
        double sum = 0.0;
        for (const double x : g[f]) sum += x;
        ASSERT_NEAR(it->second[f], sum / static_cast<double>(g[f].size()), 1e-12) << key << " " << f;
      }
    }
  }
}

TEST(TypeLexiconTest, FileRoundTripIsBitExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CorpusOccurrences occ{"geco", {}};
  for (int i = 0; i < 500; ++i) {
    RawGazeVector v;
    for (auto& x : v.values) x = rng() % 7 == 0 ? kUnknown : u(rng);
    occ.tokens.push_back({"t" + std::to_string(rng() % 120), v});
  }
  const auto lex = build_type_lexicon(std::vector<CorpusOccurrences>{occ}, 24);
  std::stringstream ss;
  write_lexicon(ss, lex);
  const auto back = read_lexicon(ss);
  EXPECT_EQ(back.bin_count, lex.bin_count);
  EXPECT_EQ(back.source_corpora, lex.source_corpora);
  EXPECT_EQ(back.thresholds, lex.thresholds);
  ASSERT_EQ(back.entries.size(), lex.entries.size());
  for (const auto& [k, v] : lex.entries) {
    ASSERT_TRUE(identical(back.entries.at(k), v)) << k;
  }
  std::stringstream again;
  write_lexicon(again, back);
  EXPECT_EQ(again.str(), ss.str());
}

TEST(TypeLexiconTest, ReadRejectsGarbage) {
  std::istringstream bad("not a lexicon\n");
  EXPECT_THROW(read_lexicon(bad), ParseError);
  const auto lex = build_type_lexicon(std::vector<CorpusOccurrences>{{"a", {{"x", filled(1.0)}}}}, 4);
  std::stringstream ss;
  write_lexicon(ss, lex);
  const std::string text = ss.str();
  std::istringstream truncated(text.substr(0, text.find("entries") + 10));
  EXPECT_THROW(read_lexicon(truncated), ParseError);
}

TEST(FeaturizedFile, RoundTripWithValues) {
  using corpus::Tag;
  std::vector<corpus::Sentence> sentences{
      fixtures::sentence_of({{"John", Tag::BeginPerson}, {"ran", Tag::O}}, 0),
      fixtures::sentence_of({{"in", Tag::O}, {"New", Tag::BeginLocation}, {"York", Tag::InsideLocation}}, 1)};
  std::vector<std::vector<RawGazeVector>> raw(2);
  double x = 1.0;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < sentences[s].tokens.size(); ++t) {
      RawGazeVector v;
      for (auto& y : v.values) y = (x += 1.7);
      if (t == 0) v[Feature::PrevFixationProbability] = kUnknown;
      raw[s].push_back(v);
    }
  }
  const auto res = featurize(sentences, raw, 3, "c");
  std::stringstream ss;
  write_featurized(ss, res.corpus);
  const auto back = read_featurized(ss, "c");
  ASSERT_EQ(back.sentences.size(), 2u);
  EXPECT_EQ(back.bin_count, 3);
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& a = res.corpus.sentences[s];
    const auto& b = back.sentences[s];
    EXPECT_EQ(b.gaze, a.gaze);
    ASSERT_EQ(b.normalized.size(), a.normalized.size());
    for (std::size_t t = 0; t < a.normalized.size(); ++t) EXPECT_TRUE(identical(a.normalized[t], b.normalized[t]));
    ASSERT_EQ(b.sentence.tokens.size(), a.sentence.tokens.size());
    for (std::size_t t = 0; t < a.sentence.tokens.size(); ++t) {
      EXPECT_EQ(b.sentence.tokens[t].surface, a.sentence.tokens[t].surface);
      EXPECT_EQ(b.sentence.tokens[t].label, a.sentence.tokens[t].label);
    }
  }
  EXPECT_EQ(res.corpus.sentences[0].gaze[0][static_cast<std::size_t>(Feature::PrevFixationProbability)], 3);

  // The lexicon path drops values; occurrences then refuse to build.
  const auto lex = build_type_lexicon(std::vector<CorpusOccurrences>{corpus_occurrences(res.corpus)}, 3);
  EXPECT_EQ(lex.entries.size(), 5u);
  const auto via_lex = featurize_with_lexicon(sentences, lex, "c");
  std::stringstream ss2;
  write_featurized(ss2, via_lex);
  const auto back2 = read_featurized(ss2, "c");
  EXPECT_TRUE(back2.sentences[0].normalized.empty());
  EXPECT_EQ(back2.sentences[1].gaze, via_lex.sentences[1].gaze);
  EXPECT_THROW(corpus_occurrences(via_lex), ValidationError);
}

TEST(FeaturizedFile, TokenVectorMismatch) {
  using corpus::Tag;
  std::vector<corpus::Sentence> sentences{fixtures::sentence_of({{"a", Tag::O}, {"b", Tag::O}})};
  std::vector<std::vector<RawGazeVector>> raw{{RawGazeVector{}}};
  EXPECT_THROW(featurize(sentences, raw, 3, "c"), ValidationError);
}

}  // namespace
}  // namespace gazener::gaze
