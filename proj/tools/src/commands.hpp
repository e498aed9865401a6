#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gazener::cli {

struct FeaturizeOptions {
  std::string tokens;
  std::string fixations;
  std::string averaged;
  std::string type_lexicon;
  int bins = 24;
  std::string name;
  std::filesystem::path out_dir = ".";
};

struct BuildLexiconOptions {
  std::vector<std::string> corpora;
  int bins = 24;
  std::string name = "lexicon";
  std::filesystem::path out_dir = ".";
};

// Shared by the config-driven subcommands.
struct ConfigOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;  // else config out_dir, else "."
};

struct TagOptions {
  std::string model;
  std::string input;
  std::string fixations;
  std::string lexicon;
  std::filesystem::path out_dir = ".";
};

struct EvaluateOptions {
  std::string gold;
  std::string pred;
  ConfigOptions config;
};

struct GenSyntheticOptions {
  std::uint64_t seed = 7;
  int sentences = 500;
  int readers = 10;
  std::string name = "synthetic";
  bool no_gaze = false;
  double entity_boost = 0.4;
  double lowercase_rate = 0.5;
  double entity_slot_rate = 0.6;
  std::filesystem::path out_dir = ".";
};

int cmd_featurize(const FeaturizeOptions& options, std::ostream& out);
int cmd_build_lexicon(const BuildLexiconOptions& options, std::ostream& out);
int cmd_train(const ConfigOptions& options, std::ostream& out);
int cmd_tag(const TagOptions& options, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out);
int cmd_cross_eval(const ConfigOptions& options, std::ostream& out);
int cmd_gen_synthetic(const GenSyntheticOptions& options, std::ostream& out);

}  // namespace gazener::cli
