#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gazener::cli {

// `key = value` lines; '#' starts a comment. Later assignments win.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source_name = "<config>");

  void set(const std::string& key, std::string value);
  // Applies a `key=value` override.
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Every key an experiment config may carry.
const std::vector<std::string>& known_config_keys();

// Collects field-level problems so a bad config is reported in one go.
class ConfigReader {
 public:
  explicit ConfigReader(const Config& config) : config_(&config) {}

  std::string text(const std::string& key, const std::string& fallback = {});
  std::string required(const std::string& key);
  long long integer(const std::string& key, long long fallback, long long min, long long max);
  double real(const std::string& key, double fallback, double min, double max);
  bool flag(const std::string& key, bool fallback);
  std::vector<std::string> list(const std::string& key);
  void fail(const std::string& key, const std::string& message);
  // Flags keys not in known_config_keys().
  void reject_unknown_keys();

  // Throws ValidationError naming every offending field.
  void finish() const;

 private:
  const Config* config_;
  std::vector<std::string> problems_;
};

}  // namespace gazener::cli
