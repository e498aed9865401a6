#include "gazener/nn/checkpoint.hpp"

#include <fstream>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::nn {

namespace {

constexpr const char* kMagic = "gazener-checkpoint 1";

struct ConfigField {
  const char* name;
  std::function<std::string(const ModelConfig&)> get;
  std::function<bool(ModelConfig&, std::string_view)> set;
};

template <typename T>
ConfigField int_field(const char* name, T ModelConfig::*member) {
  return {name, [member](const ModelConfig& c) { return std::to_string(c.*member); },
          [member](ModelConfig& c, std::string_view v) {
            const auto parsed = parse_int(v);
            if (!parsed) return false;
            c.*member = static_cast<T>(*parsed);
            return true;
          }};
}

ConfigField real_field(const char* name, double ModelConfig::*member) {
  return {name, [member](const ModelConfig& c) { return format_double(c.*member); },
          [member](ModelConfig& c, std::string_view v) {
            const auto parsed = parse_double(v);
            if (!parsed) return false;
            c.*member = *parsed;
            return true;
          }};
}

ConfigField flag_field(const char* name, bool ModelConfig::*member) {
  return {name, [member](const ModelConfig& c) { return std::string(c.*member ? "1" : "0"); },
          [member](ModelConfig& c, std::string_view v) {
            if (v != "0" && v != "1") return false;
            c.*member = v == "1";
            return true;
          }};
}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      int_field("char_embed_dim", &ModelConfig::char_embed_dim),
      int_field("word_embed_dim", &ModelConfig::word_embed_dim),
      int_field("gaze_bins", &ModelConfig::gaze_bins),
      int_field("gaze_embed_dim", &ModelConfig::gaze_embed_dim),
      int_field("char_lstm_hidden", &ModelConfig::char_lstm_hidden),
      int_field("word_lstm_hidden", &ModelConfig::word_lstm_hidden),
      real_field("dropout", &ModelConfig::dropout),
      flag_field("use_gaze", &ModelConfig::use_gaze),
      flag_field("freeze_word_embeddings", &ModelConfig::freeze_word_embeddings),
      real_field("learning_rate", &ModelConfig::learning_rate),
      real_field("gradient_clip", &ModelConfig::gradient_clip),
      int_field("seed", &ModelConfig::seed),
  };
  return fields;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::string raw(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) fail(std::string("unexpected end of file, expected ") + what);
    ++line_;
    return line;
  }
  std::vector<std::string> fields(const char* what) {
    auto line = raw(what);
    strip_cr(line);
    return split(line, '\t');
  }
  std::size_t count(const char* key) {
    const auto f = fields(key);
    const auto n = f.size() == 2 && f[0] == key ? parse_int(f[1]) : std::nullopt;
    if (!n || *n < 0) fail(std::string("expected '") + key + "<TAB>count'");
    return static_cast<std::size_t>(*n);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }
  std::istream& stream() { return in_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

}  // namespace

std::string_view gaze_source_name(GazeSource source) noexcept {
  switch (source) {
    case GazeSource::None: return "none";
    case GazeSource::Token: return "token";
    case GazeSource::Lexicon: return "lexicon";
  }
  return "none";
}

std::optional<GazeSource> parse_gaze_source(std::string_view text) noexcept {
  if (text == "none") return GazeSource::None;
  if (text == "token") return GazeSource::Token;
  if (text == "lexicon") return GazeSource::Lexicon;
  return std::nullopt;
}

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint) {
  const TaggerModel& model = checkpoint.model;
  out << kMagic << '\n';
  for (const auto& field : config_fields()) out << "config\t" << field.name << '\t' << field.get(model.config()) << '\n';
  out << "labels";
  for (std::size_t i = 0; i < corpus::kTagCount; ++i) out << '\t' << corpus::tag_name(corpus::tag_from_index(i));
  out << '\n';
  out << "gaze_source\t" << gaze_source_name(checkpoint.gaze_source) << '\n';
  out << "words\t" << model.words().size() << '\n';
  for (const auto& w : model.words().items()) out << w << '\n';
  out << "chars\t" << model.chars().size() << '\n';
  for (const auto& c : model.chars().items()) out << c << '\n';
  out << "params\t" << model.parameters().size() << '\n';
  for (const auto& p : model.parameters()) {
    out << "param\t" << p.name << '\t' << p.value.rows() << '\t' << p.value.cols() << '\n';
    for (Eigen::Index c = 0; c < p.value.cols(); ++c) {
      for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
        if (r > 0) out << ' ';
        out << format_double(p.value(r, c));
      }
      out << '\n';
    }
  }
  out << "thresholds_present\t" << (checkpoint.thresholds ? 1 : 0) << '\n';
  if (checkpoint.thresholds) gaze::write_thresholds(out, *checkpoint.thresholds);
  out << "lexicon_present\t" << (checkpoint.lexicon ? 1 : 0) << '\n';
  if (checkpoint.lexicon) gaze::write_lexicon(out, *checkpoint.lexicon);
  out << "end\n";
}

void save_checkpoint_file(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  save_checkpoint(out, checkpoint);
}

Checkpoint load_checkpoint(std::istream& in, const std::string& source_name) {
  LineReader reader(in, source_name);
  auto magic = reader.raw("header");
  strip_cr(magic);
  if (magic != kMagic) reader.fail("not a gazener checkpoint (version 1)");

  ModelConfig config;
  for (const auto& field : config_fields()) {
    const auto f = reader.fields("config line");
    if (f.size() != 3 || f[0] != "config" || f[1] != field.name) {
      reader.fail(std::string("expected config field ") + field.name);
    }
    if (!field.set(config, f[2])) reader.fail(std::string("bad value for ") + field.name);
  }
  const auto labels = reader.fields("labels");
  if (labels.size() != corpus::kTagCount + 1 || labels[0] != "labels") reader.fail("expected label list");
  for (std::size_t i = 0; i < corpus::kTagCount; ++i) {
    if (labels[i + 1] != corpus::tag_name(corpus::tag_from_index(i))) reader.fail("label set differs from this build");
  }
  const auto source = reader.fields("gaze_source");
  const auto gaze_source = source.size() == 2 && source[0] == "gaze_source" ? parse_gaze_source(source[1]) : std::nullopt;
  if (!gaze_source) reader.fail("expected gaze_source none|token|lexicon");

  auto read_items = [&](const char* key) {
    const std::size_t n = reader.count(key);
    std::vector<std::string> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) items.push_back(reader.raw("vocabulary item"));
    return items;
  };
  auto words = read_items("words");
  auto chars = read_items("chars");

  Checkpoint checkpoint{TaggerModel(config, Vocabulary::from_items(std::move(words)),
                                    Vocabulary::from_items(std::move(chars))),
                        *gaze_source, std::nullopt, std::nullopt};
  ParameterSet& params = checkpoint.model.parameters();
  const std::size_t count = reader.count("params");
  if (count != static_cast<std::size_t>(params.size())) reader.fail("parameter count does not match config");
  for (std::size_t i = 0; i < count; ++i) {
    const auto head = reader.fields("param header");
    if (head.size() != 4 || head[0] != "param") reader.fail("expected param header");
    const int id = params.find(head[1]);
    if (id < 0) reader.fail("unknown parameter " + head[1]);
    Matrix& value = params[id].value;
    const auto rows = parse_int(head[2]);
    const auto cols = parse_int(head[3]);
    if (!rows || !cols || *rows != value.rows() || *cols != value.cols()) reader.fail("shape mismatch for " + head[1]);
    for (Eigen::Index c = 0; c < value.cols(); ++c) {
      const auto line = reader.raw("parameter column");
      const auto numbers = split_whitespace(line);
      if (static_cast<Eigen::Index>(numbers.size()) != value.rows()) reader.fail("wrong column length in " + head[1]);
      for (Eigen::Index r = 0; r < value.rows(); ++r) {
        const auto v = parse_double(numbers[static_cast<std::size_t>(r)]);
        if (!v || !std::isfinite(*v)) reader.fail("bad number in " + head[1]);
        value(r, c) = *v;
      }
    }
  }
  if (reader.count("thresholds_present") == 1) {
    checkpoint.thresholds = gaze::read_thresholds(reader.stream(), source_name);
  }
  if (reader.count("lexicon_present") == 1) {
    checkpoint.lexicon = gaze::read_lexicon(reader.stream(), source_name);
  }
  auto end = reader.raw("end marker");
  strip_cr(end);
  if (end != "end") reader.fail("missing end marker");
  return checkpoint;
}

Checkpoint load_checkpoint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open checkpoint");
  return load_checkpoint(in, path.string());
}

}  // namespace gazener::nn
