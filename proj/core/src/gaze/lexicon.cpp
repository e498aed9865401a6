#include "gazener/gaze/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::gaze {

namespace {

constexpr const char* kLexiconMagic = "# gazener-lexicon v1";

struct Accumulator {
  std::array<double, kFeatureCount> sum{};
  std::array<std::size_t, kFeatureCount> count{};
};

}  // namespace

TypeLexicon TypeLexicon::empty(int bin_count) {
  TypeLexicon lexicon;
  lexicon.bin_count = bin_count;
  for (auto& cuts : lexicon.thresholds.cuts) cuts.assign(static_cast<std::size_t>(bin_count - 1), 0.0);
  lexicon.thresholds.bin_count = bin_count;
  return lexicon;
}

TypeLexicon build_type_lexicon(std::span<const CorpusOccurrences> corpora, int bin_count) {
  std::map<std::string, Accumulator> accumulators;
  TypeLexicon lexicon;
  lexicon.bin_count = bin_count;
  for (const auto& corpus : corpora) {
    if (std::find(lexicon.source_corpora.begin(), lexicon.source_corpora.end(), corpus.corpus_id) ==
        lexicon.source_corpora.end()) {
      lexicon.source_corpora.push_back(corpus.corpus_id);
    }
    for (const auto& occurrence : corpus.tokens) {
      auto& acc = accumulators[corpus::to_lower(occurrence.surface)];
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (is_unknown(occurrence.values[f])) continue;
        acc.sum[f] += occurrence.values[f];
        ++acc.count[f];
      }
    }
  }
  if (accumulators.empty()) throw std::invalid_argument("build_type_lexicon: no occurrences");

  std::vector<RawGazeVector> aggregated;
  aggregated.reserve(accumulators.size());
  for (const auto& [type, acc] : accumulators) {
    RawGazeVector v;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      v[f] = acc.count[f] == 0 ? kUnknown : acc.sum[f] / static_cast<double>(acc.count[f]);
    }
    lexicon.entries.emplace(type, v);
    aggregated.push_back(v);
  }
  lexicon.thresholds = fit_bins(aggregated, bin_count);
  return lexicon;
}

BinnedGazeVector lookup_type_features(std::string_view surface, const TypeLexicon& lexicon) {
  const auto it = lexicon.entries.find(corpus::to_lower(surface));
  if (it == lexicon.entries.end()) return BinnedGazeVector::all_unknown(lexicon.bin_count);
  return apply_bins(it->second, lexicon.thresholds);
}

BinnedGazeVector lookup_type_features(const corpus::Token& token, const TypeLexicon& lexicon) {
  return lookup_type_features(token.surface, lexicon);
}

double lexicon_coverage(std::span<const corpus::Sentence> sentences, const TypeLexicon& lexicon) {
  std::size_t tokens = 0;
  std::size_t covered = 0;
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence.tokens) {
      ++tokens;
      if (lexicon.entries.contains(corpus::to_lower(token.surface))) ++covered;
    }
  }
  return tokens == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(tokens);
}

void write_lexicon(std::ostream& out, const TypeLexicon& lexicon) {
  out << kLexiconMagic << '\n';
  out << "bins\t" << lexicon.bin_count << '\n';
  out << "features";
  for (const auto name : kFeatureNames) out << '\t' << name;
  out << '\n';
  out << "corpora";
  for (const auto& id : lexicon.source_corpora) out << '\t' << id;
  out << '\n';
  out << "entries\t" << lexicon.entries.size() << '\n';
  for (const auto& [type, v] : lexicon.entries) {
    out << type;
    for (const double value : v.values) out << '\t' << format_double(value);
    out << '\n';
  }
  write_thresholds(out, lexicon.thresholds);
}

void write_lexicon_file(const std::filesystem::path& path, const TypeLexicon& lexicon) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_lexicon(out, lexicon);
}

TypeLexicon read_lexicon(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&](const char* what) -> std::vector<std::string> {
    if (!std::getline(in, line)) throw ParseError(source_name, line_no + 1, std::string("missing ") + what);
    ++line_no;
    strip_cr(line);
    return split(line, '\t');
  };
  auto magic = next("header");
  if (line != kLexiconMagic) throw ParseError(source_name, line_no, "not a gazener lexicon (v1)");

  TypeLexicon lexicon;
  auto fields = next("bins");
  const auto bins = fields.size() == 2 && fields[0] == "bins" ? parse_int(fields[1]) : std::nullopt;
  if (!bins || *bins < 2) throw ParseError(source_name, line_no, "expected 'bins<TAB>B'");
  lexicon.bin_count = static_cast<int>(*bins);

  fields = next("feature list");
  if (fields.size() != kFeatureCount + 1 || fields[0] != "features") {
    throw ParseError(source_name, line_no, "expected feature list");
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (fields[f + 1] != kFeatureNames[f]) {
      throw ParseError(source_name, line_no, "unexpected feature '" + fields[f + 1] + "'");
    }
  }
  fields = next("corpora");
  if (fields.empty() || fields[0] != "corpora") throw ParseError(source_name, line_no, "expected corpora");
  lexicon.source_corpora.assign(fields.begin() + 1, fields.end());

  fields = next("entry count");
  const auto count = fields.size() == 2 && fields[0] == "entries" ? parse_int(fields[1]) : std::nullopt;
  if (!count || *count < 0) throw ParseError(source_name, line_no, "expected 'entries<TAB>N'");
  for (long long i = 0; i < *count; ++i) {
    fields = next("entry");
    if (fields.size() != kFeatureCount + 1) throw ParseError(source_name, line_no, "entry needs 17 values");
    RawGazeVector v;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const auto value = parse_double(fields[f + 1]);
      if (!value) throw ParseError(source_name, line_no, "bad value '" + fields[f + 1] + "'");
      v[f] = *value;
    }
    if (fields[0] != corpus::to_lower(fields[0])) {
      throw ParseError(source_name, line_no, "lexicon keys must be lower-cased");
    }
    if (!lexicon.entries.emplace(fields[0], v).second) {
      throw ParseError(source_name, line_no, "duplicate type '" + fields[0] + "'");
    }
  }
  lexicon.thresholds = read_thresholds(in, source_name);
  if (lexicon.thresholds.bin_count != lexicon.bin_count) {
    throw ParseError(source_name, line_no, "threshold bin count differs from header");
  }
  return lexicon;
}

TypeLexicon read_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open lexicon file");
  return read_lexicon(in, path.string());
}

}  // namespace gazener::gaze
