#include "gazener/gaze/featurize.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gazener/corpus/alignment.hpp"
#include "gazener/corpus/token_file.hpp"
#include "gazener/error.hpp"
#include "gazener/gaze/measures.hpp"
#include "gazener/text_util.hpp"

namespace gazener::gaze {

namespace {

constexpr std::string_view kFeaturizedMagic = "# gazener-featurized v1 bins=";
constexpr std::string_view kValuesFlag = " values=normalized";

void add_occurrences(CorpusOccurrences& occ, const FeaturizedSentence& s) {
  if (s.normalized.size() != s.sentence.tokens.size()) {
    throw ValidationError("corpus " + occ.corpus_id + ", sentence " + std::to_string(s.sentence.sent_id) +
                          ": no normalized gaze values to aggregate");
  }
  for (std::size_t t = 0; t < s.sentence.tokens.size(); ++t) {
    occ.tokens.push_back({s.sentence.tokens[t].surface, s.normalized[t]});
  }
}

bool has_values(const FeaturizedCorpus& corpus) {
  if (corpus.sentences.empty()) return false;
  for (const auto& s : corpus.sentences) {
    if (s.normalized.size() != s.sentence.tokens.size()) return false;
  }
  return true;
}

}  // namespace

std::vector<corpus::Sentence> FeaturizedCorpus::plain_sentences() const {
  std::vector<corpus::Sentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.sentence);
  return out;
}

std::vector<std::vector<RawGazeVector>> token_features(std::span<const corpus::Sentence> sentences,
                                                       const corpus::FixationData& fixations) {
  std::vector<std::vector<RawGazeVector>> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    const auto groups = sentence_group_features(sentence, fixations);
    std::map<int, RawGazeVector> by_group;
    for (std::size_t g = 0; g < groups.size(); ++g) by_group.emplace(static_cast<int>(g), groups[g]);
    out.push_back(corpus::align_split_tokens(sentence, by_group));
  }
  return out;
}

std::vector<std::vector<RawGazeVector>> token_features(std::span<const corpus::Sentence> sentences,
                                                       const corpus::AveragedGaze& averaged) {
  static const std::map<int, RawGazeVector> kNone;
  std::vector<std::vector<RawGazeVector>> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    const auto it = averaged.find(sentence.sent_id);
    out.push_back(corpus::align_split_tokens(sentence, it == averaged.end() ? kNone : it->second));
  }
  return out;
}

FeaturizeResult featurize(std::span<const corpus::Sentence> sentences,
                          const std::vector<std::vector<RawGazeVector>>& raw, int bin_count,
                          const std::string& corpus_id) {
  if (raw.size() != sentences.size()) throw ValidationError("featurize: one vector list per sentence required");
  std::vector<RawGazeVector> all;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (raw[s].size() != sentences[s].tokens.size()) {
      throw ValidationError("featurize: sentence " + std::to_string(sentences[s].sent_id) +
                            " has a token/vector count mismatch");
    }
    all.insert(all.end(), raw[s].begin(), raw[s].end());
  }
  FeaturizeResult result;
  result.thresholds = fit_bins(all, bin_count);
  const EmpiricalCdf cdf = fit_cdf(all);
  result.corpus.corpus_id = corpus_id;
  result.corpus.bin_count = bin_count;
  result.corpus.sentences.reserve(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    FeaturizedSentence fs{sentences[s], {}, {}};
    fs.gaze.reserve(raw[s].size());
    fs.normalized.reserve(raw[s].size());
    for (const auto& v : raw[s]) {
      fs.gaze.push_back(apply_bins(v, result.thresholds));
      fs.normalized.push_back(cdf.normalize(v));
    }
    result.corpus.sentences.push_back(std::move(fs));
  }
  return result;
}

FeaturizedCorpus featurize_with_lexicon(std::span<const corpus::Sentence> sentences,
                                        const TypeLexicon& lexicon, const std::string& corpus_id) {
  FeaturizedCorpus out;
  out.corpus_id = corpus_id;
  out.bin_count = lexicon.bin_count;
  out.sentences.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    FeaturizedSentence fs{sentence, {}, {}};
    fs.gaze.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens) fs.gaze.push_back(lookup_type_features(token, lexicon));
    out.sentences.push_back(std::move(fs));
  }
  return out;
}

CorpusOccurrences corpus_occurrences(const FeaturizedCorpus& corpus) {
  CorpusOccurrences occ{corpus.corpus_id, {}};
  for (const auto& s : corpus.sentences) add_occurrences(occ, s);
  return occ;
}

CorpusOccurrences corpus_occurrences(const FeaturizedCorpus& corpus, std::span<const int> sentence_ids) {
  CorpusOccurrences occ{corpus.corpus_id, {}};
  for (const int id : sentence_ids) {
    add_occurrences(occ, corpus.sentences.at(static_cast<std::size_t>(id)));
  }
  return occ;
}

void write_featurized(std::ostream& out, const FeaturizedCorpus& corpus) {
  const bool values = has_values(corpus);
  out << kFeaturizedMagic << corpus.bin_count << (values ? kValuesFlag : "") << '\n';
  for (const auto& s : corpus.sentences) {
    for (std::size_t t = 0; t < s.sentence.tokens.size(); ++t) {
      const auto& token = s.sentence.tokens[t];
      out << token.surface << '\t' << token.whitespace_group << '\t' << corpus::tag_name(token.label);
      for (const int b : s.gaze[t].bins) out << '\t' << b;
      if (values) {
        for (const double v : s.normalized[t].values) out << '\t' << format_double(v);
      }
      out << '\n';
    }
    out << '\n';
  }
}

void write_featurized_file(const std::filesystem::path& path, const FeaturizedCorpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_featurized(out, corpus);
}

FeaturizedCorpus read_featurized(std::istream& in, const std::string& corpus_id,
                                 const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "empty featurized file");
  strip_cr(line);
  if (!line.starts_with(kFeaturizedMagic)) {
    throw ParseError(source_name, 1, "not a gazener featurized corpus (v1)");
  }
  std::string_view rest = std::string_view(line).substr(kFeaturizedMagic.size());
  const bool values = rest.ends_with(kValuesFlag);
  if (values) rest.remove_suffix(kValuesFlag.size());
  const auto bins = parse_int(rest);
  if (!bins || *bins < 2) throw ParseError(source_name, 1, "bad bin count in header");
  const std::size_t columns = 3 + kFeatureCount * (values ? 2 : 1);

  FeaturizedCorpus corpus;
  corpus.corpus_id = corpus_id;
  corpus.bin_count = static_cast<int>(*bins);

  // The first three columns form an ordinary token file; the bins are peeled off here.
  std::string token_columns;
  std::vector<std::vector<BinnedGazeVector>> gaze(1);
  std::vector<std::vector<RawGazeVector>> normalized(1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!line.empty() && line.front() == '#') {
      token_columns += '\n';
      continue;
    }
    if (trim(line).empty()) {
      token_columns += '\n';
      if (!gaze.back().empty()) {
        gaze.emplace_back();
        normalized.emplace_back();
      }
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != columns) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(columns) + " columns, found " + std::to_string(fields.size()));
    }
    BinnedGazeVector binned;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const auto b = parse_int(fields[3 + f]);
      if (!b || *b < 0 || *b > corpus.bin_count) throw ParseError(source_name, line_no, "bin index out of range");
      binned[f] = static_cast<int>(*b);
    }
    gaze.back().push_back(binned);
    if (values) {
      RawGazeVector v;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const auto x = parse_double(fields[3 + kFeatureCount + f]);
        if (!x) throw ParseError(source_name, line_no, "unparsable normalized value");
        v[f] = *x;
      }
      normalized.back().push_back(v);
    }
    token_columns += fields[0] + '\t' + fields[1] + '\t' + fields[2] + '\n';
  }
  if (gaze.back().empty()) {
    gaze.pop_back();
    normalized.pop_back();
  }

  // Line numbers in errors from here are offset by the header line.
  std::istringstream tokens(token_columns);
  auto parsed = corpus::parse_token_stream(tokens, corpus_id, source_name);
  if (parsed.sentences.size() != gaze.size()) throw ParseError(source_name, line_no, "sentence structure mismatch");
  for (std::size_t s = 0; s < gaze.size(); ++s) {
    corpus.sentences.push_back({std::move(parsed.sentences[s]), std::move(gaze[s]), std::move(normalized[s])});
  }
  return corpus;
}

FeaturizedCorpus read_featurized_file(const std::filesystem::path& path, std::string corpus_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open featurized corpus");
  if (corpus_id.empty()) corpus_id = path.stem().string();
  return read_featurized(in, corpus_id, path.string());
}

}  // namespace gazener::gaze
