#include "gazener/experiments/folds.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace gazener::experiments {

namespace {

std::vector<std::vector<int>> slices(int n, int k, std::uint64_t seed) {
  const auto order = shuffled_indices(n, seed);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto begin = static_cast<std::size_t>(static_cast<long long>(i) * n / k);
    const auto end = static_cast<std::size_t>(static_cast<long long>(i + 1) * n / k);
    out[static_cast<std::size_t>(i)].assign(order.begin() + static_cast<long>(begin),
                                            order.begin() + static_cast<long>(end));
  }
  return out;
}

}  // namespace

std::vector<int> shuffled_indices(int n, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw so the permutation does not depend on
  // the standard library's shuffle.
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

std::vector<FoldPlan> make_folds(int sentence_count, int k, std::uint64_t seed) {
  if (k < 3) throw std::invalid_argument("make_folds: k must be at least 3");
  if (sentence_count < k) {
    throw std::invalid_argument("make_folds: " + std::to_string(sentence_count) + " sentences cannot fill " +
                                std::to_string(k) + " folds");
  }
  const auto parts = slices(sentence_count, k, seed);
  std::vector<FoldPlan> plans;
  for (int i = 0; i < k; ++i) {
    FoldPlan plan;
    plan.fold_id = i;
    const int dev = (i + 1) % k;
    plan.test = parts[static_cast<std::size_t>(i)];
    plan.dev = parts[static_cast<std::size_t>(dev)];
    for (int j = 0; j < k; ++j) {
      if (j == i || j == dev) continue;
      const auto& part = parts[static_cast<std::size_t>(j)];
      plan.train.insert(plan.train.end(), part.begin(), part.end());
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<FoldPlan> make_cross_folds(int target_sentence_count, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("make_cross_folds: k must be at least 2");
  if (target_sentence_count < k) throw std::invalid_argument("make_cross_folds: target corpus too small");
  const auto parts = slices(target_sentence_count, k, seed);
  std::vector<FoldPlan> plans;
  for (int i = 0; i < k; ++i) {
    FoldPlan plan;
    plan.fold_id = i;
    plan.dev = parts[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const auto& part = parts[static_cast<std::size_t>(j)];
      plan.test.insert(plan.test.end(), part.begin(), part.end());
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace gazener::experiments
