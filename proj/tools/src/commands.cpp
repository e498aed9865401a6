#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gazener/cli/config.hpp"
#include "gazener/cli/manifest.hpp"
#include "gazener/corpus/averaged_gaze_file.hpp"
#include "gazener/corpus/embeddings.hpp"
#include "gazener/corpus/fixation_file.hpp"
#include "gazener/corpus/token_file.hpp"
#include "gazener/error.hpp"
#include "gazener/experiments/experiment.hpp"
#include "gazener/experiments/folds.hpp"
#include "gazener/experiments/metrics.hpp"
#include "gazener/experiments/report.hpp"
#include "gazener/experiments/significance.hpp"
#include "gazener/experiments/synthetic.hpp"
#include "gazener/experiments/trainer.hpp"
#include "gazener/gaze/featurize.hpp"
#include "gazener/gaze/lexicon.hpp"
#include "gazener/nn/checkpoint.hpp"
#include "gazener/text_util.hpp"

namespace gazener::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using experiments::FeatureMode;

namespace {

class Run {
 public:
  explicit Run(std::string command) : start_(Clock::now()) { manifest_.command = std::move(command); }

  InputReader& inputs() { return inputs_; }
  RunManifest& manifest() { return manifest_; }

  fs::path output(const fs::path& path) {
    manifest_.outputs.push_back(path.string());
    return path;
  }

  void finish(const fs::path& manifest_path) {
    manifest_.inputs = inputs_.digests();
    manifest_.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    write_manifest(manifest_path, manifest_);
  }

 private:
  Clock::time_point start_;
  InputReader inputs_;
  RunManifest manifest_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

bool is_featurized(const std::string& bytes) { return bytes.starts_with("# gazener-featurized"); }

// A featurized corpus, or a plain token file whose tokens all get UNKNOWN bins.
gaze::FeaturizedCorpus load_corpus(InputReader& inputs, const std::string& path, int bins) {
  const std::string bytes = inputs.read(path);
  std::istringstream in(bytes);
  if (is_featurized(bytes)) return gaze::read_featurized(in, stem_of(path), path);
  auto file = corpus::parse_token_stream(in, stem_of(path), path);
  gaze::FeaturizedCorpus out;
  out.corpus_id = stem_of(path);
  out.bin_count = bins;
  for (auto& s : file.sentences) {
    gaze::FeaturizedSentence fs;
    fs.gaze.assign(s.tokens.size(), gaze::BinnedGazeVector::all_unknown(bins));
    fs.sentence = std::move(s);
    out.sentences.push_back(std::move(fs));
  }
  return out;
}

std::vector<corpus::Sentence> load_tokens(InputReader& inputs, const std::string& path) {
  auto in = inputs.open(path);
  return corpus::parse_token_stream(in, stem_of(path), path).sentences;
}

gaze::TypeLexicon load_lexicon(InputReader& inputs, const std::string& path) {
  auto in = inputs.open(path);
  return gaze::read_lexicon(in, path);
}

struct ExperimentSetup {
  experiments::ExperimentConfig config;
  std::optional<corpus::EmbeddingTable> embeddings;
};

// Model and protocol knobs shared by train, evaluate and cross-eval.
void read_experiment_config(ConfigReader& reader, InputReader& inputs, ExperimentSetup& setup) {
  auto& c = setup.config;
  auto& m = c.model;
  m.gaze_bins = static_cast<int>(reader.integer("bins", m.gaze_bins, 2, 1000));
  m.gaze_embed_dim = static_cast<int>(reader.integer("gaze_embed_dim", m.gaze_bins, 1, 4096));
  m.char_embed_dim = static_cast<int>(reader.integer("char_embed_dim", m.char_embed_dim, 1, 4096));
  m.word_embed_dim = static_cast<int>(reader.integer("word_embed_dim", m.word_embed_dim, 1, 4096));
  m.char_lstm_hidden = static_cast<int>(reader.integer("char_lstm_hidden", m.char_lstm_hidden, 1, 4096));
  m.word_lstm_hidden = static_cast<int>(reader.integer("word_lstm_hidden", m.word_lstm_hidden, 1, 4096));
  m.dropout = reader.real("dropout", m.dropout, 0.0, 0.99);
  m.learning_rate = reader.real("learning_rate", m.learning_rate, 0.0, 10.0);
  m.gradient_clip = reader.real("gradient_clip", m.gradient_clip, 1e-9, 1e9);
  m.freeze_word_embeddings = reader.flag("freeze_embeddings", false);
  c.training.max_epochs = static_cast<int>(reader.integer("max_epochs", c.training.max_epochs, 1, 100000));
  c.training.patience = static_cast<int>(reader.integer("patience", c.training.patience, 1, 100000));
  c.training.singleton_unknown_rate =
      reader.real("singleton_unknown_rate", c.training.singleton_unknown_rate, 0.0, 1.0);
  c.folds = static_cast<int>(reader.integer("folds", c.folds, 3, 1000));
  c.cross_folds = static_cast<int>(reader.integer("cross_folds", c.cross_folds, 3, 1000));
  c.threads = static_cast<int>(reader.integer("threads", 1, 0, 1024));
  const auto seed = reader.integer("seed", 1, 0, std::numeric_limits<long long>::max());
  c.seed = static_cast<std::uint64_t>(seed);
  m.seed = c.seed;
  const auto embeddings = reader.text("embeddings");
  if (!embeddings.empty()) {
    auto in = inputs.open(embeddings);
    setup.embeddings = corpus::load_embeddings_stream(in, static_cast<std::size_t>(m.word_embed_dim), embeddings).table;
    c.pretrained = &*setup.embeddings;
  }
}

Config load_config(const ConfigOptions& options, InputReader& inputs) {
  Config config;
  if (!options.config.empty()) {
    auto in = inputs.open(options.config);
    config = Config::parse(in, options.config);
  }
  for (const auto& o : options.overrides) config.apply_override(o);
  if (options.seed) config.set("seed", std::to_string(*options.seed));
  if (options.out_dir) config.set("out_dir", options.out_dir->string());
  return config;
}

std::optional<FeatureMode> read_mode(ConfigReader& reader, const std::string& fallback) {
  const auto text = reader.text("feature_mode", fallback);
  const auto mode = experiments::parse_feature_mode(text);
  if (!mode) reader.fail("feature_mode", "'" + text + "' is not one of none, token, type_individual, type_combined");
  return mode;
}

void write_reports(Run& run, const fs::path& dir, const std::string& title,
                   const std::vector<experiments::ExperimentReport>& reports, bool with_baseline, std::ostream& out) {
  std::vector<experiments::ReportRow> rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    experiments::ReportRow row{&reports[i], std::nullopt};
    if (with_baseline && i > 0 && reports[i].folds.size() >= 2) {
      row.versus_baseline = experiments::paired_one_sided_ttest(reports[0].fold_f1(), reports[i].fold_f1());
    }
    rows.push_back(row);
  }
  const std::string text = experiments::format_results_table(title, rows) + "\n" + experiments::format_per_class(rows);
  write_text(run.output(dir / "results.txt"), text);
  std::ostringstream csv;
  experiments::write_fold_csv(csv, rows);
  write_text(run.output(dir / "folds.csv"), csv.str());
  out << text;
}

}  // namespace

int cmd_featurize(const FeaturizeOptions& options, std::ostream& out) {
  Run run("featurize");
  if (options.bins < 2) throw ValidationError("--bins must be at least 2");
  if (!options.fixations.empty() && !options.averaged.empty()) {
    throw ValidationError("give either --fixations or --averaged, not both");
  }
  const bool has_gaze = !options.fixations.empty() || !options.averaged.empty();
  if (!has_gaze && options.type_lexicon.empty()) {
    throw ValidationError("featurize needs --fixations, --averaged or --type-lexicon");
  }
  const std::string name = options.name.empty() ? stem_of(options.tokens) : options.name;
  auto& m = run.manifest();
  m.config = {{"tokens", options.tokens}, {"fixations", options.fixations}, {"averaged", options.averaged},
              {"type_lexicon", options.type_lexicon}, {"bins", std::to_string(options.bins)}, {"name", name}};

  auto token_in = run.inputs().open(options.tokens);
  auto tokens = corpus::parse_token_stream(token_in, name, options.tokens);
  ensure_dir(options.out_dir);

  gaze::FeaturizedCorpus corpus;
  if (has_gaze) {
    std::vector<std::vector<gaze::RawGazeVector>> raw;
    if (!options.fixations.empty()) {
      auto in = run.inputs().open(options.fixations);
      raw = gaze::token_features(tokens.sentences, corpus::parse_fixation_stream(in, tokens.sentences, options.fixations));
    } else {
      auto in = run.inputs().open(options.averaged);
      raw = gaze::token_features(tokens.sentences,
                                 corpus::parse_averaged_gaze_stream(in, tokens.sentences, options.averaged));
    }
    auto result = gaze::featurize(tokens.sentences, raw, options.bins, name);
    corpus = std::move(result.corpus);
    std::ostringstream th;
    gaze::write_thresholds(th, result.thresholds);
    write_text(run.output(options.out_dir / (name + ".thresholds")), th.str());
  } else {
    const auto lexicon = load_lexicon(run.inputs(), options.type_lexicon);
    corpus = gaze::featurize_with_lexicon(tokens.sentences, lexicon, name);
    out << "lexicon coverage: " << static_cast<int>(100.0 * gaze::lexicon_coverage(tokens.sentences, lexicon) + 0.5)
        << "%\n";
  }
  std::ostringstream text;
  gaze::write_featurized(text, corpus);
  write_text(run.output(options.out_dir / (name + ".featurized")), text.str());
  if (tokens.repaired_labels > 0) out << "repaired " << tokens.repaired_labels << " stray I- labels\n";
  out << "featurized " << corpus.sentences.size() << " sentences into " << (options.out_dir / (name + ".featurized")).string()
      << "\n";
  run.finish(options.out_dir / (name + ".featurize.manifest.json"));
  return 0;
}

int cmd_build_lexicon(const BuildLexiconOptions& options, std::ostream& out) {
  Run run("build-lexicon");
  if (options.corpora.empty()) throw ValidationError("build-lexicon needs at least one featurized corpus");
  auto& m = run.manifest();
  std::string joined;
  for (const auto& c : options.corpora) joined += (joined.empty() ? "" : ",") + c;
  m.config = {{"corpora", joined}, {"bins", std::to_string(options.bins)}, {"name", options.name}};
  std::vector<gaze::CorpusOccurrences> occurrences;
  for (const auto& path : options.corpora) {
    const auto corpus = load_corpus(run.inputs(), path, options.bins);
    occurrences.push_back(gaze::corpus_occurrences(corpus));
  }
  const auto lexicon = gaze::build_type_lexicon(occurrences, options.bins);
  ensure_dir(options.out_dir);
  std::ostringstream text;
  gaze::write_lexicon(text, lexicon);
  const auto path = run.output(options.out_dir / (options.name + ".lexicon"));
  write_text(path, text.str());
  out << "lexicon with " << lexicon.entries.size() << " types written to " << path.string() << "\n";
  run.finish(options.out_dir / (options.name + ".build-lexicon.manifest.json"));
  return 0;
}

int cmd_train(const ConfigOptions& options, std::ostream& out) {
  Run run("train");
  Config config = load_config(options, run.inputs());
  ConfigReader reader(config);
  reader.reject_unknown_keys();
  ExperimentSetup setup;
  read_experiment_config(reader, run.inputs(), setup);
  const auto mode = read_mode(reader, "token");
  const auto train_path = reader.required("train");
  const auto dev_path = reader.text("dev");
  const auto lexicon_path = reader.text("lexicon");
  const auto thresholds_path = reader.text("thresholds");
  if (mode == FeatureMode::TypeCombined && lexicon_path.empty()) reader.fail("lexicon", "is required for type_combined");
  const fs::path out_dir = reader.text("out_dir", ".");
  reader.finish();
  run.manifest().config = config.values();
  run.manifest().seed = setup.config.seed;

  const int bins = setup.config.model.gaze_bins;
  auto train = load_corpus(run.inputs(), train_path, bins);
  gaze::FeaturizedCorpus dev;
  if (!dev_path.empty()) {
    dev = load_corpus(run.inputs(), dev_path, bins);
  } else {
    // Hold out a seeded tenth of the training sentences.
    const int n = static_cast<int>(train.sentences.size());
    if (n < 2) throw ValidationError("train: need at least two sentences to hold out a dev split");
    const auto order = experiments::shuffled_indices(n, setup.config.seed);
    const int dev_count = std::max(1, n / 10);
    std::vector<bool> is_dev(static_cast<std::size_t>(n), false);
    for (int i = 0; i < dev_count; ++i) is_dev[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
    gaze::FeaturizedCorpus kept;
    kept.corpus_id = train.corpus_id;
    kept.bin_count = train.bin_count;
    dev.corpus_id = train.corpus_id;
    dev.bin_count = train.bin_count;
    for (int i = 0; i < n; ++i) {
      (is_dev[static_cast<std::size_t>(i)] ? dev : kept).sentences.push_back(train.sentences[static_cast<std::size_t>(i)]);
    }
    train = std::move(kept);
  }

  std::optional<gaze::TypeLexicon> lexicon;
  if (*mode == FeatureMode::TypeCombined) lexicon = load_lexicon(run.inputs(), lexicon_path);
  if (*mode == FeatureMode::TypeIndividual) {
    lexicon = gaze::build_type_lexicon(std::vector{gaze::corpus_occurrences(train)}, bins);
  }
  if (*mode == FeatureMode::Token && (train.bin_count != bins || dev.bin_count != bins)) {
    throw ValidationError("bins: corpus bin count differs from config bins");
  }
  if (lexicon && lexicon->bin_count != bins) throw ValidationError("bins: lexicon bin count differs from config bins");

  auto rows_of = [&](const gaze::FeaturizedSentence& fs) {
    std::vector<gaze::BinnedGazeVector> rows;
    if (*mode == FeatureMode::Token) return fs.gaze;
    if (lexicon) {
      for (const auto& t : fs.sentence.tokens) rows.push_back(gaze::lookup_type_features(t, *lexicon));
    }
    return rows;
  };

  nn::ModelConfig model_config = setup.config.model;
  model_config.use_gaze = *mode != FeatureMode::None;
  const auto plain = train.plain_sentences();
  nn::TaggerModel model(model_config, nn::build_word_vocabulary(plain, setup.config.pretrained),
                        nn::build_char_vocabulary(plain), setup.config.pretrained);
  auto examples = [&](const gaze::FeaturizedCorpus& c) {
    std::vector<experiments::Example> ex;
    for (const auto& fs : c.sentences) {
      const auto rows = rows_of(fs);
      ex.push_back({model.make_inputs(fs.sentence, rows), fs.sentence.labels()});
    }
    return ex;
  };
  const auto train_ex = examples(train);
  const auto dev_ex = examples(dev);
  const auto log = experiments::train_with_early_stopping(model, train_ex, dev_ex, setup.config.training);

  nn::Checkpoint checkpoint{std::move(model), nn::GazeSource::None, std::nullopt, std::nullopt};
  if (*mode == FeatureMode::Token) {
    checkpoint.gaze_source = nn::GazeSource::Token;
    if (!thresholds_path.empty()) {
      auto in = run.inputs().open(thresholds_path);
      checkpoint.thresholds = gaze::read_thresholds(in, thresholds_path);
    }
  } else if (lexicon) {
    checkpoint.gaze_source = nn::GazeSource::Lexicon;
    checkpoint.lexicon = std::move(lexicon);
  }

  ensure_dir(out_dir);
  std::ostringstream ckpt;
  nn::save_checkpoint(ckpt, checkpoint);
  write_text(run.output(out_dir / "model.ckpt"), ckpt.str());
  std::ostringstream csv;
  csv << "epoch,train_loss,dev_f1\n";
  for (const auto& e : log.epochs) csv << e.epoch << ',' << format_double(e.train_loss) << ',' << format_double(e.dev_f1) << '\n';
  write_text(run.output(out_dir / "training_log.csv"), csv.str());
  out << "trained " << log.stopped_epoch << " epochs; best dev F " << format_double(log.best_dev_f1) << " at epoch "
      << log.best_epoch << "\n";
  run.finish(out_dir / "train.manifest.json");
  return 0;
}

int cmd_tag(const TagOptions& options, std::ostream& out, std::ostream& err) {
  Run run("tag");
  run.manifest().config = {{"model", options.model}, {"input", options.input}, {"fixations", options.fixations},
                           {"lexicon", options.lexicon}};
  auto ckpt_in = run.inputs().open(options.model);
  auto checkpoint = nn::load_checkpoint(ckpt_in, options.model);
  const auto& model = checkpoint.model;
  const int bins = model.config().gaze_bins;
  run.manifest().seed = model.config().seed;

  const std::string bytes = run.inputs().read(options.input);
  std::istringstream in(bytes);
  const bool featurized = is_featurized(bytes);
  gaze::FeaturizedCorpus corpus = featurized ? gaze::read_featurized(in, stem_of(options.input), options.input)
                                             : gaze::FeaturizedCorpus{};
  if (!featurized) {
    auto tokens = corpus::parse_token_stream(in, stem_of(options.input), options.input);
    corpus.corpus_id = stem_of(options.input);
    corpus.bin_count = bins;
    for (auto& s : tokens.sentences) corpus.sentences.push_back({std::move(s), {}, {}});
  }
  std::optional<gaze::TypeLexicon> lexicon = checkpoint.lexicon;
  if (!options.lexicon.empty()) lexicon = load_lexicon(run.inputs(), options.lexicon);

  if (checkpoint.gaze_source == nn::GazeSource::Token && !featurized) {
    if (!options.fixations.empty()) {
      if (!checkpoint.thresholds) throw ValidationError("checkpoint carries no thresholds to bin --fixations with");
      const auto plain = corpus.plain_sentences();
      auto fin = run.inputs().open(options.fixations);
      const auto raw = gaze::token_features(plain, corpus::parse_fixation_stream(fin, plain, options.fixations));
      for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
        for (const auto& v : raw[s]) corpus.sentences[s].gaze.push_back(gaze::apply_bins(v, *checkpoint.thresholds));
      }
    } else if (!lexicon) {
      err << "warning: no gaze data and no lexicon; every token gets UNKNOWN gaze bins\n";
    }
  }
  const bool use_lexicon_rows = checkpoint.gaze_source == nn::GazeSource::Lexicon ||
                                (checkpoint.gaze_source == nn::GazeSource::Token && !featurized &&
                                 options.fixations.empty() && lexicon);
  if (use_lexicon_rows && !lexicon) throw ValidationError("checkpoint needs a lexicon; pass --lexicon");
  if (lexicon && lexicon->bin_count != bins) throw ValidationError("lexicon bin count differs from the model's");
  if (featurized && checkpoint.gaze_source == nn::GazeSource::Token && corpus.bin_count != bins) {
    throw ValidationError("input bin count differs from the model's");
  }

  std::vector<corpus::Sentence> tagged;
  for (auto& fs : corpus.sentences) {
    std::vector<gaze::BinnedGazeVector> rows;
    if (use_lexicon_rows) {
      for (const auto& t : fs.sentence.tokens) rows.push_back(gaze::lookup_type_features(t, *lexicon));
    } else if (checkpoint.gaze_source == nn::GazeSource::Token) {
      rows = fs.gaze;
    }
    auto labels = nn::predict(model, model.make_inputs(fs.sentence, rows));
    corpus::repair_iob(labels);
    corpus::Sentence s = fs.sentence;
    for (std::size_t t = 0; t < s.tokens.size(); ++t) s.tokens[t].label = labels[t];
    tagged.push_back(std::move(s));
  }
  ensure_dir(options.out_dir);
  std::ostringstream text;
  corpus::write_token_stream(text, tagged);
  const auto path = run.output(options.out_dir / (stem_of(options.input) + ".tagged.tsv"));
  write_text(path, text.str());
  out << "tagged " << tagged.size() << " sentences into " << path.string() << "\n";
  run.finish(options.out_dir / (stem_of(options.input) + ".tag.manifest.json"));
  return 0;
}

namespace {

int evaluate_files(const EvaluateOptions& options, std::ostream& out) {
  Run run("evaluate");
  run.manifest().config = {{"gold", options.gold}, {"pred", options.pred}};
  const auto gold = load_tokens(run.inputs(), options.gold);
  const auto pred = load_tokens(run.inputs(), options.pred);
  if (gold.size() != pred.size()) {
    throw ValidationError("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                          std::to_string(pred.size()));
  }
  std::vector<std::vector<corpus::Tag>> g, p;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].tokens.size() != pred[i].tokens.size()) {
      throw ValidationError("sentence " + std::to_string(i) + ": token counts differ");
    }
    g.push_back(gold[i].labels());
    p.push_back(pred[i].labels());
  }
  experiments::ExperimentReport report;
  report.name = stem_of(options.pred);
  report.mode = stem_of(options.pred);
  report.folds.push_back({0, experiments::evaluate(g, p), {}, 0, 0, gold.size()});
  const fs::path dir = options.config.out_dir.value_or(".");
  ensure_dir(dir);
  write_reports(run, dir, "evaluation of " + options.pred + " against " + options.gold, {report}, false, out);
  run.finish(dir / "evaluate.manifest.json");
  return 0;
}

}  // namespace

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out) {
  const bool files = !options.gold.empty() || !options.pred.empty();
  if (files && !options.config.config.empty()) throw ValidationError("give either --gold/--pred or --config");
  if (files) {
    if (options.gold.empty() || options.pred.empty()) throw ValidationError("--gold and --pred go together");
    return evaluate_files(options, out);
  }
  if (options.config.config.empty() && options.config.overrides.empty()) {
    throw ValidationError("evaluate needs --gold/--pred or --config");
  }

  Run run("evaluate");
  Config config = load_config(options.config, run.inputs());
  ConfigReader reader(config);
  reader.reject_unknown_keys();
  ExperimentSetup setup;
  read_experiment_config(reader, run.inputs(), setup);
  const auto experiment = reader.text("experiment", "individual");
  if (experiment != "individual" && experiment != "external_cv") {
    reader.fail("experiment", "evaluate runs 'individual' or 'external_cv'; use cross-eval for the others");
  }
  const auto mode = read_mode(reader, experiment == "individual" ? "token" : "type_combined");
  const bool baseline = reader.flag("baseline", true);
  const auto lexicon_path = reader.text("lexicon");
  std::string data_path = experiment == "individual" ? reader.required("corpus") : reader.required("tokens");
  if (mode == FeatureMode::TypeCombined && lexicon_path.empty()) reader.fail("lexicon", "is required for type_combined");
  const fs::path out_dir = reader.text("out_dir", ".");
  reader.finish();
  run.manifest().config = config.values();
  run.manifest().seed = setup.config.seed;

  std::optional<gaze::TypeLexicon> lexicon;
  if (!lexicon_path.empty()) lexicon = load_lexicon(run.inputs(), lexicon_path);
  std::vector<experiments::ExperimentReport> reports;
  std::string title;
  if (experiment == "individual") {
    const auto corpus = load_corpus(run.inputs(), data_path, setup.config.model.gaze_bins);
    title = corpus.corpus_id + ": " + std::to_string(setup.config.folds) + "-fold cross-validation";
    if (baseline && *mode != FeatureMode::None) {
      reports.push_back(experiments::run_individual_experiment(corpus, FeatureMode::None, setup.config));
    }
    reports.push_back(experiments::run_individual_experiment(corpus, *mode, setup.config, lexicon ? &*lexicon : nullptr));
  } else {
    const auto sentences = load_tokens(run.inputs(), data_path);
    title = stem_of(data_path) + ": " + std::to_string(setup.config.folds) + "-fold cross-validation, lexicon features";
    const gaze::TypeLexicon* lex = *mode == FeatureMode::None ? nullptr : (lexicon ? &*lexicon : nullptr);
    if (baseline && lex != nullptr) {
      reports.push_back(experiments::run_external_experiment(sentences, nullptr, experiments::ExternalMode::CrossValidation,
                                                             setup.config));
    }
    reports.push_back(
        experiments::run_external_experiment(sentences, lex, experiments::ExternalMode::CrossValidation, setup.config));
  }
  ensure_dir(out_dir);
  write_reports(run, out_dir, title, reports, reports.size() > 1, out);
  run.finish(out_dir / "evaluate.manifest.json");
  return 0;
}

int cmd_cross_eval(const ConfigOptions& options, std::ostream& out) {
  Run run("cross-eval");
  Config config = load_config(options, run.inputs());
  ConfigReader reader(config);
  reader.reject_unknown_keys();
  ExperimentSetup setup;
  read_experiment_config(reader, run.inputs(), setup);
  const auto experiment = reader.text("experiment", "cross");
  if (experiment != "cross" && experiment != "external_transfer") {
    reader.fail("experiment", "cross-eval runs 'cross' or 'external_transfer'");
  }
  const auto mode = read_mode(reader, experiment == "cross" ? "token" : "type_combined");
  const bool baseline = reader.flag("baseline", true);
  const auto lexicon_path = reader.text("lexicon");
  std::string source, target, tokens;
  std::vector<std::string> gaze_corpora;
  if (experiment == "cross") {
    source = reader.required("source");
    target = reader.required("target");
  } else {
    tokens = reader.required("tokens");
    gaze_corpora = reader.list("gaze_corpora");
    if (gaze_corpora.empty()) reader.fail("gaze_corpora", "is required for external_transfer");
  }
  const bool type_mode = mode == FeatureMode::TypeIndividual || mode == FeatureMode::TypeCombined;
  if (type_mode && lexicon_path.empty()) reader.fail("lexicon", "is required for type feature modes");
  const fs::path out_dir = reader.text("out_dir", ".");
  reader.finish();
  run.manifest().config = config.values();
  run.manifest().seed = setup.config.seed;

  const int bins = setup.config.model.gaze_bins;
  std::optional<gaze::TypeLexicon> lexicon;
  if (!lexicon_path.empty()) lexicon = load_lexicon(run.inputs(), lexicon_path);
  std::vector<experiments::ExperimentReport> reports;
  std::string title;
  if (experiment == "cross") {
    const auto src = load_corpus(run.inputs(), source, bins);
    const auto tgt = load_corpus(run.inputs(), target, bins);
    title = src.corpus_id + " -> " + tgt.corpus_id + ": 20% dev / 80% test over " +
            std::to_string(setup.config.cross_folds) + " folds";
    if (baseline && *mode != FeatureMode::None) {
      reports.push_back(experiments::run_cross_experiment(src, tgt, FeatureMode::None, setup.config));
    }
    reports.push_back(experiments::run_cross_experiment(src, tgt, *mode, setup.config, lexicon ? &*lexicon : nullptr));
  } else {
    std::vector<gaze::FeaturizedCorpus> corpora;
    for (const auto& path : gaze_corpora) corpora.push_back(load_corpus(run.inputs(), path, bins));
    const auto sentences = load_tokens(run.inputs(), tokens);
    title = "gaze corpora -> " + stem_of(tokens) + ": 20% dev / 80% test over " +
            std::to_string(setup.config.cross_folds) + " folds";
    const gaze::TypeLexicon* lex = *mode == FeatureMode::None ? nullptr : (lexicon ? &*lexicon : nullptr);
    if (baseline && lex != nullptr) {
      reports.push_back(experiments::run_external_experiment(sentences, nullptr, experiments::ExternalMode::Transfer,
                                                             setup.config, corpora));
    }
    reports.push_back(
        experiments::run_external_experiment(sentences, lex, experiments::ExternalMode::Transfer, setup.config, corpora));
  }
  ensure_dir(out_dir);
  write_reports(run, out_dir, title, reports, reports.size() > 1, out);
  run.finish(out_dir / "cross-eval.manifest.json");
  return 0;
}

int cmd_gen_synthetic(const GenSyntheticOptions& options, std::ostream& out) {
  Run run("gen-synthetic");
  experiments::SyntheticSpec spec;
  spec.seed = options.seed;
  spec.sentences = options.sentences;
  spec.readers = options.readers;
  spec.corpus_id = options.name;
  spec.with_gaze = !options.no_gaze;
  spec.entity_duration_boost = options.entity_boost;
  spec.lowercase_rate = options.lowercase_rate;
  spec.entity_slot_rate = options.entity_slot_rate;
  run.manifest().seed = options.seed;
  run.manifest().config = {{"sentences", std::to_string(options.sentences)},
                           {"readers", std::to_string(options.readers)},
                           {"name", options.name},
                           {"gaze", spec.with_gaze ? "true" : "false"},
                           {"entity_boost", format_double(options.entity_boost)},
                           {"lowercase_rate", format_double(options.lowercase_rate)},
                           {"entity_slot_rate", format_double(options.entity_slot_rate)}};
  const auto corpus = experiments::generate_synthetic_corpus(spec);
  ensure_dir(options.out_dir);
  const fs::path tokens = run.output(options.out_dir / (options.name + ".tokens"));
  fs::path fixations;
  if (spec.with_gaze) fixations = run.output(options.out_dir / (options.name + ".fixations.csv"));
  experiments::write_synthetic_corpus(corpus, tokens, fixations);
  out << "generated " << corpus.sentences.size() << " sentences";
  if (spec.with_gaze) out << " and " << corpus.fixations.size() << " fixations";
  out << " in " << options.out_dir.string() << "\n";
  run.finish(options.out_dir / (options.name + ".gen-synthetic.manifest.json"));
  return 0;
}

}  // namespace gazener::cli
