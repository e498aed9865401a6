#pragma once

#include <cstdint>
#include <vector>

namespace gazener::experiments {

// Indices into a corpus' sentence list.
struct FoldPlan {
  int fold_id = 0;
  std::vector<int> train;
  std::vector<int> dev;
  std::vector<int> test;
};

// Shuffles 0..n-1 with `seed` and cuts k near-equal slices; fold i tests on
// slice i, tunes on slice (i+1) mod k and trains on the rest. Throws
// std::invalid_argument if k < 3 or n < k.
std::vector<FoldPlan> make_folds(int sentence_count, int k, std::uint64_t seed);

// Cross-corpus plans over the target corpus: train is empty (the whole source
// corpus is used), fold i takes slice i of k as dev and the rest as test.
std::vector<FoldPlan> make_cross_folds(int target_sentence_count, int k, std::uint64_t seed);

// The seeded permutation used by both planners.
std::vector<int> shuffled_indices(int n, std::uint64_t seed);

}  // namespace gazener::experiments
