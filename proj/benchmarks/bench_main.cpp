#include <benchmark/benchmark.h>

#include <random>

#include "gazener/experiments/trainer.hpp"
#include "gazener/gaze/binning.hpp"
#include "gazener/nn/crf.hpp"
#include "gazener/nn/model.hpp"

using namespace gazener;

namespace {

nn::CrfScores random_scores(int length, int labels, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  nn::CrfScores s;
  s.emissions = nn::Matrix::NullaryExpr(labels, length, [&] { return n(rng); });
  s.transitions = nn::Matrix::NullaryExpr(labels, labels, [&] { return n(rng); });
  s.start = nn::Vector::NullaryExpr(labels, [&] { return n(rng); });
  s.stop = nn::Vector::NullaryExpr(labels, [&] { return n(rng); });
  return s;
}

void BM_CrfLogPartition(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto s = random_scores(static_cast<int>(state.range(0)), 7, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::crf_log_partition(s));
}
BENCHMARK(BM_CrfLogPartition)->Arg(10)->Arg(40);

void BM_Viterbi(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto s = random_scores(static_cast<int>(state.range(0)), 7, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::viterbi_decode(s));
}
BENCHMARK(BM_Viterbi)->Arg(10)->Arg(40);

void BM_FitBins(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> d(5.0, 0.4);
  std::vector<gaze::RawGazeVector> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) {
    for (auto& value : x.values) value = d(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(gaze::fit_bins(v, 24));
}
BENCHMARK(BM_FitBins)->Arg(1000)->Arg(50000);

corpus::Sentence sentence(int length) {
  corpus::Sentence s;
  for (int i = 0; i < length; ++i) s.tokens.push_back(corpus::make_token("word" + std::to_string(i), corpus::Tag::O, i));
  return s;
}

void BM_TrainStep(benchmark::State& state) {
  nn::ModelConfig cfg;
  cfg.use_gaze = state.range(1) != 0;
  const auto s = sentence(static_cast<int>(state.range(0)));
  std::vector<corpus::Sentence> train{s};
  nn::TaggerModel model(cfg, nn::build_word_vocabulary(train), nn::build_char_vocabulary(train));
  std::vector<gaze::BinnedGazeVector> gaze(s.tokens.size());
  for (std::size_t t = 0; t < gaze.size(); ++t) gaze[t].bins.fill(static_cast<int>(t % 24));
  const experiments::Example example{model.make_inputs(s, gaze), s.labels()};
  nn::Gradients grads(model.parameters());
  std::mt19937_64 a(1), b(2);
  for (auto _ : state) experiments::train_step(model, example, grads, {&a, &b});
}
BENCHMARK(BM_TrainStep)->Args({12, 0})->Args({12, 1})->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  nn::ModelConfig cfg;
  const auto s = sentence(12);
  std::vector<corpus::Sentence> train{s};
  nn::TaggerModel model(cfg, nn::build_word_vocabulary(train), nn::build_char_vocabulary(train));
  const auto inputs = model.make_inputs(s, {});
  for (auto _ : state) benchmark::DoNotOptimize(nn::predict(model, inputs));
}
BENCHMARK(BM_Predict)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
