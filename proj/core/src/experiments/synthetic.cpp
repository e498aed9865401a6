#include "gazener/experiments/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string_view>

#include "gazener/corpus/token_file.hpp"
#include "gazener/error.hpp"

namespace gazener::experiments {

namespace {

constexpr std::array<std::string_view, 16> kOrgSuffixes = {
    "group", "bank", "holdings", "industries", "motors", "airlines", "energy", "systems",
    "partners", "insurance", "foods", "media", "telecom", "capital", "institute", "foundation"};

// Slot codes: P person, L location, O organization, N bare noun. An entity
// slot holds a bare noun instead with probability 1 - entity_slot_rate, so
// the context tells the class but not whether the slot is a name.
constexpr std::array<std::string_view, 24> kTemplates = {
    "P said that O will support P next year .",
    "the report on L was published by O on monday .",
    "P met P in L last week .",
    "P 's plan for L was discussed at length .",
    "officials in L expect more N by march .",
    "P , who works for O , moved to L .",
    "we heard a lot about N and N today .",
    "the meeting between O and O ended early .",
    "P told reporters that O had changed everything .",
    "prices of N rose sharply after O announced the deal .",
    "a new study from O links N with N .",
    "O said it would cut jobs in L .",
    "the road from L to L is often closed .",
    "thousands gathered in L to hear P speak .",
    "the talks with O resumed in L on friday .",
    "P 's remarks about N drew criticism from O .",
    "interest in N has grown since P arrived .",
    "O and O agreed to share N and N .",
    "she wrote a long letter to P .",
    "the exhibition of N opened in L .",
    "P will host the final against P .",
    "P praised O during a visit to L .",
    "demand for N fell while O stayed calm .",
    "critics say P has little to do with O ."};

// Uniform double in [0, 1) from the top 53 bits.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform(rng) * static_cast<double>(n));
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform(rng);
  const double u2 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct Piece {
  std::string text;
  corpus::Tag label = corpus::Tag::O;
  bool attach = false;  // joins the previous whitespace group
  bool proper = false;
};

// Pseudo-word pools shared by every corpus (fixed seed), so that names and
// nouns look alike to a character model and separately generated corpora
// draw from one vocabulary.
struct Pools {
  std::vector<std::string> first, last, places, org_stems, nouns;
};

const Pools& pools() {
  static const Pools instance = [] {
    static constexpr std::string_view onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t",
                                                  "v", "z", "br", "tr", "st", "gl", "pl", "sk"};
    static constexpr std::string_view vowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    static constexpr std::string_view codas[] = {"", "", "", "n", "r", "s", "l", "t", "m"};
    std::mt19937_64 rng(0x6A7E5EEDULL);
    std::vector<std::string> seen;
    auto word = [&] {
      for (;;) {
        std::string w;
        const int syllables = 2 + static_cast<int>(pick(rng, 2));
        for (int i = 0; i < syllables; ++i) {
          w += onsets[pick(rng, std::size(onsets))];
          w += vowels[pick(rng, std::size(vowels))];
        }
        w += codas[pick(rng, std::size(codas))];
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          return w;
        }
      }
    };
    Pools p;
    for (int i = 0; i < 300; ++i) p.first.push_back(word());
    for (int i = 0; i < 300; ++i) p.last.push_back(word());
    for (int i = 0; i < 300; ++i) p.places.push_back(word());
    for (int i = 0; i < 300; ++i) p.org_stems.push_back(word());
    for (int i = 0; i < 800; ++i) p.nouns.push_back(word());
    return p;
  }();
  return instance;
}

const std::string& draw(const std::vector<std::string>& pool, std::mt19937_64& rng) {
  return pool[pick(rng, pool.size())];
}

void add_entity(std::vector<Piece>& out, corpus::EntityClass cls, std::mt19937_64& rng) {
  const Pools& p = pools();
  std::vector<std::string> words;
  switch (cls) {
    case corpus::EntityClass::Person: {
      const double r = uniform(rng);
      if (r < 0.6) {
        words = {draw(p.first, rng), draw(p.last, rng)};
      } else if (r < 0.85) {
        words = {draw(p.last, rng)};
      } else {
        words = {draw(p.first, rng)};
      }
      break;
    }
    case corpus::EntityClass::Location:
      words = {draw(p.places, rng)};
      break;
    case corpus::EntityClass::Organization:
      words = {draw(p.org_stems, rng)};
      if (uniform(rng) < 0.6) words.emplace_back(kOrgSuffixes[pick(rng, kOrgSuffixes.size())]);
      break;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    Piece piece;
    piece.text = words[i];
    piece.label = i == 0 ? corpus::begin_tag(cls) : corpus::inside_tag(cls);
    piece.proper = true;
    out.push_back(std::move(piece));
  }
}

// A bare noun, sometimes a two-word compound.
void add_noun(std::vector<Piece>& out, std::mt19937_64& rng) {
  const int words = uniform(rng) < 0.3 ? 2 : 1;
  for (int i = 0; i < words; ++i) {
    Piece piece;
    piece.text = draw(pools().nouns, rng);
    out.push_back(std::move(piece));
  }
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

corpus::Sentence make_sentence(const SyntheticSpec& spec, int sent_id, std::mt19937_64& rng) {
  const auto& pattern = kTemplates[pick(rng, kTemplates.size())];
  std::vector<Piece> pieces;
  std::size_t start = 0;
  while (start < pattern.size()) {
    auto end = pattern.find(' ', start);
    if (end == std::string_view::npos) end = pattern.size();
    const auto word = pattern.substr(start, end - start);
    start = end + 1;
    if (word == "P" || word == "L" || word == "O") {
      if (uniform(rng) >= spec.entity_slot_rate) {
        add_noun(pieces, rng);
      } else if (word == "P") {
        add_entity(pieces, corpus::EntityClass::Person, rng);
      } else if (word == "L") {
        add_entity(pieces, corpus::EntityClass::Location, rng);
      } else {
        add_entity(pieces, corpus::EntityClass::Organization, rng);
      }
    } else if (word == "N") {
      add_noun(pieces, rng);
    } else {
      Piece piece;
      piece.text = std::string(word);
      piece.attach = word == "'s" || word == "," || word == ".";
      pieces.push_back(std::move(piece));
    }
  }

  const bool lowercase = uniform(rng) < spec.lowercase_rate;
  corpus::Sentence sentence;
  sentence.corpus_id = spec.corpus_id;
  sentence.sent_id = sent_id;
  int group = -1;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto text = pieces[i].text;
    if (!lowercase && (pieces[i].proper || i == 0)) text = capitalize(text);
    if (!pieces[i].attach || group < 0) ++group;
    sentence.tokens.push_back(corpus::make_token(std::move(text), pieces[i].label, group));
  }
  return sentence;
}

// One reader's pass over a sentence: mostly left to right with skips,
// refixations and short regressions. Entity words are fixated more often
// and for longer.
void read_sentence(const corpus::Sentence& sentence, const std::string& reader, double reader_speed,
                   const SyntheticSpec& spec, std::mt19937_64& rng, std::vector<corpus::FixationEvent>& out) {
  const int groups = sentence.group_count();
  std::vector<int> length(static_cast<std::size_t>(groups), 0);
  std::vector<bool> entity(static_cast<std::size_t>(groups), false);
  for (const auto& token : sentence.tokens) {
    const auto g = static_cast<std::size_t>(token.whitespace_group);
    length[g] += static_cast<int>(token.surface.size());
    if (token.label != corpus::Tag::O) entity[g] = true;
  }
  int order = 0;
  auto fixate = [&](int g, double scale) {
    const auto gi = static_cast<std::size_t>(g);
    double ms = (150.0 + 9.0 * length[gi]) * reader_speed * std::exp(0.25 * standard_normal(rng)) * scale;
    if (entity[gi]) ms *= 1.0 + spec.entity_duration_boost;
    ms = std::max(60.0, std::round(ms));
    out.push_back({reader, sentence.sent_id, g, order++, ms});
  };
  for (int g = 0; g < groups; ++g) {
    const auto gi = static_cast<std::size_t>(g);
    double skip = length[gi] <= 3 ? 0.45 : 0.15;
    if (entity[gi]) skip *= 0.25;
    if (uniform(rng) < skip) continue;
    fixate(g, 1.0);
    const double refixation = 0.1 + 0.015 * length[gi] + (entity[gi] ? 0.2 : 0.0);
    if (uniform(rng) < refixation) fixate(g, 0.7);
    if (g > 0 && uniform(rng) < (entity[gi] ? 0.15 : 0.07)) {
      fixate(static_cast<int>(pick(rng, static_cast<std::size_t>(g))), 0.8);
    }
  }
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.sentences < 1) throw ValidationError("synthetic corpus needs at least one sentence");
  if (spec.with_gaze && spec.readers < 1) throw ValidationError("synthetic corpus needs at least one reader");
  std::mt19937_64 text_rng(spec.seed);
  std::mt19937_64 gaze_rng(spec.seed ^ 0x5DEECE66DULL);
  SyntheticCorpus corpus;
  corpus.sentences.reserve(static_cast<std::size_t>(spec.sentences));
  for (int i = 0; i < spec.sentences; ++i) corpus.sentences.push_back(make_sentence(spec, i, text_rng));
  if (!spec.with_gaze) return corpus;

  for (int r = 0; r < spec.readers; ++r) {
    char id[16];
    std::snprintf(id, sizeof id, "r%02d", r + 1);
    const double speed = std::exp(0.15 * standard_normal(gaze_rng));
    for (const auto& sentence : corpus.sentences) read_sentence(sentence, id, speed, spec, gaze_rng, corpus.fixations);
  }
  return corpus;
}

void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& token_file,
                            const std::filesystem::path& fixation_file) {
  corpus::write_token_file(token_file, corpus.sentences);
  if (fixation_file.empty()) return;
  std::ofstream out(fixation_file, std::ios::binary);
  if (!out) throw Error("cannot write " + fixation_file.string());
  corpus::write_fixation_stream(out, corpus.fixations);
}

}  // namespace gazener::experiments
