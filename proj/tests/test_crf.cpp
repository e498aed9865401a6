#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "gazener/nn/crf.hpp"

namespace gazener::nn {
namespace {

CrfScores random_scores(std::mt19937_64& rng, int labels, int length) {
  std::normal_distribution<double> n(0.0, 1.0);
  CrfScores s{Matrix(labels, length), Matrix(labels, labels), Vector(labels), Vector(labels)};
  for (Eigen::Index i = 0; i < s.emissions.size(); ++i) s.emissions.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < s.transitions.size(); ++i) s.transitions.data()[i] = n(rng);
  for (int i = 0; i < labels; ++i) {
    s.start[i] = n(rng);
    s.stop[i] = n(rng);
  }
  return s;
}

// Small integer scores so that many paths tie exactly.
CrfScores tied_scores(std::mt19937_64& rng, int labels, int length) {
  std::uniform_int_distribution<int> u(-1, 1);
  CrfScores s{Matrix(labels, length), Matrix(labels, labels), Vector(labels), Vector(labels)};
  for (Eigen::Index i = 0; i < s.emissions.size(); ++i) s.emissions.data()[i] = u(rng);
  for (Eigen::Index i = 0; i < s.transitions.size(); ++i) s.transitions.data()[i] = u(rng);
  for (int i = 0; i < labels; ++i) {
    s.start[i] = u(rng);
    s.stop[i] = u(rng);
  }
  return s;
}

double oracle_score(const CrfScores& s, const std::vector<int>& y) {
  double total = s.start[y.front()] + s.stop[y.back()];
  for (std::size_t t = 0; t < y.size(); ++t) {
    total += s.emissions(y[t], static_cast<Eigen::Index>(t));
    if (t > 0) total += s.transitions(y[t - 1], y[t]);
  }
  return total;
}

// Calls `f` on every label sequence of the given length.
template <typename F>
void for_each_path(int labels, int length, F&& f) {
  std::vector<int> y(static_cast<std::size_t>(length), 0);
  while (true) {
    f(y);
    int t = length - 1;
    while (t >= 0 && ++y[static_cast<std::size_t>(t)] == labels) y[static_cast<std::size_t>(t--)] = 0;
    if (t < 0) return;
  }
}

struct Brute {
  double log_z;
  std::vector<int> best;
  double best_score;
};

// Among optimal paths the decoder must return the one that is smallest when
// compared from the last position backwards.
bool later_is_smaller(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Brute brute_force(const CrfScores& s) {
  std::vector<double> scores;
  Brute out{0.0, {}, -INFINITY};
  for_each_path(s.labels(), s.length(), [&](const std::vector<int>& y) {
    const double v = oracle_score(s, y);
    scores.push_back(v);
    if (v > out.best_score || (v == out.best_score && later_is_smaller(y, out.best))) {
      out.best_score = v;
      out.best = y;
    }
  });
  double m = -INFINITY;
  for (const double v : scores) m = std::max(m, v);
  double sum = 0.0;
  for (const double v : scores) sum += std::exp(v - m);
  out.log_z = m + std::log(sum);
  return out;
}

TEST(Crf, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(20240601);
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1500; ++trial) {
    const int labels = 1 + static_cast<int>(rng() % 5);
    const int length = 1 + static_cast<int>(rng() % 5);
    const auto s = random_scores(rng, labels, length);
    const auto b = brute_force(s);
    ASSERT_NEAR(crf_log_partition(s), b.log_z, 1e-8) << "trial " << trial;
    const auto path = viterbi_decode(s);
    ASSERT_EQ(path.labels, b.best) << "trial " << trial;
    ASSERT_NEAR(path.score, b.best_score, 1e-9);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 10.0);
}

TEST(Crf, ViterbiTieRule) {
  std::mt19937_64 rng(77);
  int with_ties = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int labels = 1 + static_cast<int>(rng() % 5);
    const int length = 1 + static_cast<int>(rng() % 5);
    const auto s = tied_scores(rng, labels, length);
    const auto b = brute_force(s);
    int optimal = 0;
    for_each_path(labels, length, [&](const std::vector<int>& y) { optimal += oracle_score(s, y) == b.best_score; });
    with_ties += optimal > 1;
    ASSERT_EQ(viterbi_decode(s).labels, b.best) << "trial " << trial;
  }
  EXPECT_GT(with_ties, 200);
}

TEST(Crf, AllZeroScoresDecodeToLabelZero) {
  CrfScores s{Matrix::Zero(4, 3), Matrix::Zero(4, 4), Vector::Zero(4), Vector::Zero(4)};
  EXPECT_EQ(viterbi_decode(s).labels, (std::vector<int>{0, 0, 0}));
  EXPECT_NEAR(crf_log_partition(s), 3 * std::log(4.0), 1e-12);
}

TEST(Crf, MarginalsMatchEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int labels = 1 + static_cast<int>(rng() % 4);
    const int length = 1 + static_cast<int>(rng() % 4);
    const auto s = random_scores(rng, labels, length);
    const double log_z = brute_force(s).log_z;
    Matrix unary = Matrix::Zero(labels, length);
    Matrix pairwise = Matrix::Zero(labels, labels);
    for_each_path(labels, length, [&](const std::vector<int>& y) {
      const double p = std::exp(oracle_score(s, y) - log_z);
      for (int t = 0; t < length; ++t) {
        unary(y[static_cast<std::size_t>(t)], t) += p;
        if (t > 0) pairwise(y[static_cast<std::size_t>(t - 1)], y[static_cast<std::size_t>(t)]) += p;
      }
    });
    const auto m = crf_marginals(s);
    ASSERT_NEAR(m.log_partition, log_z, 1e-8);
    ASSERT_LT((m.unary - unary).cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_LT((m.pairwise - pairwise).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Crf, NllIsPartitionMinusGoldScore) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_scores(rng, 4, 5);
    std::vector<int> gold(5);
    for (auto& g : gold) g = static_cast<int>(rng() % 4);
    EXPECT_NEAR(crf_path_score(s, gold), oracle_score(s, gold), 1e-12);
    EXPECT_NEAR(crf_nll(s, gold), brute_force(s).log_z - oracle_score(s, gold), 1e-8);
    EXPECT_GE(crf_nll(s, gold), 0.0);
  }
}

TEST(Crf, LogSumExpIsStable) {
  Vector v(3);
  v << 1000.0, 1000.0, -1000.0;
  EXPECT_NEAR(log_sum_exp(v), 1000.0 + std::log(2.0), 1e-12);
  v << -1000.0, -1000.0, -1000.0;
  EXPECT_NEAR(log_sum_exp(v), -1000.0 + std::log(3.0), 1e-12);
}

}  // namespace
}  // namespace gazener::nn
