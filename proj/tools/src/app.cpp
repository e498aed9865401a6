#include "gazener/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gazener/error.hpp"

namespace gazener::cli {

namespace {

void add_config_options(CLI::App* cmd, ConfigOptions& o, std::string& out_flag) {
  cmd->add_option("-c,--config", o.config, "Experiment config file (key = value lines)");
  cmd->add_option("-s,--set", o.overrides, "Override a config value, key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "Seed for every random choice");
  cmd->add_option("-o,--out", out_flag, "Output directory (overrides config out_dir)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gazener: gaze-augmented named entity tagging", "gazener"};
  app.set_version_flag("--version", "gazener 0.1.0");
  app.require_subcommand(1);

  FeaturizeOptions featurize;
  std::string featurize_out = ".";
  auto* c_featurize = app.add_subcommand("featurize", "Bin per-token gaze measures of a corpus");
  c_featurize->add_option("-t,--tokens", featurize.tokens, "Token file")->required();
  c_featurize->add_option("-f,--fixations", featurize.fixations, "Fixation event CSV");
  c_featurize->add_option("-a,--averaged", featurize.averaged, "Reader-averaged measure CSV");
  c_featurize->add_option("-l,--type-lexicon", featurize.type_lexicon,
                          "Type lexicon used when no gaze file is given");
  c_featurize->add_option("-b,--bins", featurize.bins, "Quantile bins per feature")->capture_default_str();
  c_featurize->add_option("-n,--name", featurize.name, "Output name (default: token file stem)");
  c_featurize->add_option("-o,--out", featurize_out, "Output directory")->capture_default_str();

  BuildLexiconOptions lexicon;
  std::string lexicon_out = ".";
  auto* c_lexicon = app.add_subcommand("build-lexicon", "Average binned gaze per word type over corpora");
  c_lexicon->add_option("corpora", lexicon.corpora, "Featurized corpus files")->required();
  c_lexicon->add_option("-b,--bins", lexicon.bins, "Quantile bins of the lexicon")->capture_default_str();
  c_lexicon->add_option("-n,--name", lexicon.name, "Output name")->capture_default_str();
  c_lexicon->add_option("-o,--out", lexicon_out, "Output directory")->capture_default_str();

  ConfigOptions train;
  std::string train_out;
  auto* c_train = app.add_subcommand("train", "Train one tagger with early stopping");
  add_config_options(c_train, train, train_out);

  TagOptions tag;
  std::string tag_out = ".";
  auto* c_tag = app.add_subcommand("tag", "Label a token or featurized file with a trained model");
  c_tag->add_option("-m,--model", tag.model, "Checkpoint file")->required();
  c_tag->add_option("-i,--input", tag.input, "Token file or featurized corpus")->required();
  c_tag->add_option("-f,--fixations", tag.fixations, "Fixation CSV binned with the checkpoint thresholds");
  c_tag->add_option("-l,--lexicon", tag.lexicon, "Type lexicon for text without gaze data");
  c_tag->add_option("-o,--out", tag_out, "Output directory")->capture_default_str();

  EvaluateOptions evaluate;
  std::string evaluate_out;
  auto* c_evaluate = app.add_subcommand("evaluate", "Score predictions, or run a cross-validation experiment");
  c_evaluate->add_option("-g,--gold", evaluate.gold, "Gold token file");
  c_evaluate->add_option("-p,--pred", evaluate.pred, "Predicted token file");
  add_config_options(c_evaluate, evaluate.config, evaluate_out);

  ConfigOptions cross;
  std::string cross_out;
  auto* c_cross = app.add_subcommand("cross-eval", "Train on one corpus, test on another");
  add_config_options(c_cross, cross, cross_out);

  GenSyntheticOptions synthetic;
  std::string synthetic_out = ".";
  auto* c_synthetic = app.add_subcommand("gen-synthetic", "Write a synthetic labelled corpus with fixations");
  c_synthetic->add_option("--seed", synthetic.seed, "Generator seed")->capture_default_str();
  c_synthetic->add_option("--sentences", synthetic.sentences, "Sentence count")->capture_default_str()->check(
      CLI::PositiveNumber);
  c_synthetic->add_option("--readers", synthetic.readers, "Simulated readers")->capture_default_str()->check(
      CLI::PositiveNumber);
  c_synthetic->add_option("-n,--name", synthetic.name, "Output name")->capture_default_str();
  c_synthetic->add_flag("--no-gaze", synthetic.no_gaze, "Skip the fixation file");
  c_synthetic->add_option("--entity-boost", synthetic.entity_boost, "Relative duration increase on entity words")
      ->capture_default_str();
  c_synthetic->add_option("--lowercase-rate", synthetic.lowercase_rate, "Share of all-lowercase sentences")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_synthetic->add_option("--entity-slot-rate", synthetic.entity_slot_rate, "Share of entity slots holding a name")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_synthetic->add_option("-o,--out", synthetic_out, "Output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const char* env_out = std::getenv(kOutDirEnv);
  const bool env = env_out != nullptr && *env_out != '\0';
  auto dir = [&](const std::string& flag) -> std::filesystem::path { return env ? env_out : flag; };
  auto optional_dir = [&](const std::string& flag) -> std::optional<std::filesystem::path> {
    if (env) return std::filesystem::path(env_out);
    if (flag.empty()) return std::nullopt;
    return std::filesystem::path(flag);
  };

  try {
    if (*c_featurize) {
      featurize.out_dir = dir(featurize_out);
      return cmd_featurize(featurize, out);
    }
    if (*c_lexicon) {
      lexicon.out_dir = dir(lexicon_out);
      return cmd_build_lexicon(lexicon, out);
    }
    if (*c_train) {
      train.out_dir = optional_dir(train_out);
      return cmd_train(train, out);
    }
    if (*c_tag) {
      tag.out_dir = dir(tag_out);
      return cmd_tag(tag, out, err);
    }
    if (*c_evaluate) {
      evaluate.config.out_dir = optional_dir(evaluate_out);
      return cmd_evaluate(evaluate, out);
    }
    if (*c_cross) {
      cross.out_dir = optional_dir(cross_out);
      return cmd_cross_eval(cross, out);
    }
    if (*c_synthetic) {
      synthetic.out_dir = dir(synthetic_out);
      return cmd_gen_synthetic(synthetic, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace gazener::cli
