#include "gazener/cli/config.hpp"

#include <algorithm>
#include <istream>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::cli {

Config Config::parse(std::istream& in, const std::string& source_name) {
  Config config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(source_name, line_no, "expected 'key = value'");
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) throw ParseError(source_name, line_no, "empty key");
    config.set(std::string(key), std::string(trim(body.substr(eq + 1))));
  }
  return config;
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override '" + assignment + "' is not of the form key=value");
  }
  set(std::string(trim(std::string_view(assignment).substr(0, eq))),
      std::string(trim(std::string_view(assignment).substr(eq + 1))));
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "corpus", "source", "target", "tokens", "gaze_corpora", "lexicon", "train", "dev",
      "thresholds", "feature_mode", "baseline", "bins", "seed", "folds", "cross_folds", "max_epochs",
      "patience", "learning_rate", "gradient_clip", "dropout", "char_embed_dim", "word_embed_dim",
      "gaze_embed_dim", "char_lstm_hidden", "word_lstm_hidden", "embeddings", "freeze_embeddings",
      "singleton_unknown_rate", "threads", "out_dir"};
  return keys;
}

std::string ConfigReader::text(const std::string& key, const std::string& fallback) {
  return config_->get_or(key, fallback);
}

std::string ConfigReader::required(const std::string& key) {
  const auto value = config_->get(key);
  if (!value || value->empty()) {
    fail(key, "is required");
    return {};
  }
  return *value;
}

long long ConfigReader::integer(const std::string& key, long long fallback, long long min, long long max) {
  const auto value = config_->get(key);
  if (!value) return fallback;
  const auto parsed = parse_int(*value);
  if (!parsed) {
    fail(key, "'" + *value + "' is not an integer");
    return fallback;
  }
  if (*parsed < min || *parsed > max) {
    fail(key, "must be in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    return fallback;
  }
  return *parsed;
}

double ConfigReader::real(const std::string& key, double fallback, double min, double max) {
  const auto value = config_->get(key);
  if (!value) return fallback;
  const auto parsed = parse_double(*value);
  if (!parsed || !(*parsed == *parsed)) {
    fail(key, "'" + *value + "' is not a number");
    return fallback;
  }
  if (*parsed < min || *parsed > max) {
    fail(key, "must be in [" + format_double(min) + ", " + format_double(max) + "]");
    return fallback;
  }
  return *parsed;
}

bool ConfigReader::flag(const std::string& key, bool fallback) {
  const auto value = config_->get(key);
  if (!value) return fallback;
  if (*value == "true" || *value == "1" || *value == "yes") return true;
  if (*value == "false" || *value == "0" || *value == "no") return false;
  fail(key, "'" + *value + "' is not a boolean");
  return fallback;
}

std::vector<std::string> ConfigReader::list(const std::string& key) {
  std::vector<std::string> out;
  const auto value = config_->get(key);
  if (!value) return out;
  for (const auto& item : split(*value, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void ConfigReader::fail(const std::string& key, const std::string& message) {
  problems_.push_back(key + ": " + message);
}

void ConfigReader::reject_unknown_keys() {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : config_->values()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(key, "unknown config field");
  }
}

void ConfigReader::finish() const {
  if (problems_.empty()) return;
  std::string message = "invalid config:";
  for (const auto& p : problems_) message += "\n  " + p;
  throw ValidationError(message);
}

}  // namespace gazener::cli
