#pragma once

#include <span>
#include <vector>

#include "gazener/nn/autodiff.hpp"

namespace gazener::nn {

// Scores of a linear-chain CRF over one sentence of T tokens and L labels.
struct CrfScores {
  Matrix emissions;    // L x T
  Matrix transitions;  // L x L, [from, to]
  Vector start;        // L
  Vector stop;         // L

  int labels() const noexcept { return static_cast<int>(emissions.rows()); }
  int length() const noexcept { return static_cast<int>(emissions.cols()); }
};

struct Path {
  std::vector<int> labels;
  double score = 0.0;
};

double log_sum_exp(const Eigen::Ref<const Vector>& v);

double crf_path_score(const CrfScores& scores, std::span<const int> path);

// Forward algorithm in log space.
double crf_log_partition(const CrfScores& scores);

double crf_nll(const CrfScores& scores, std::span<const int> gold);

struct CrfMarginals {
  Matrix unary;     // L x T, P(y_t = y)
  Matrix pairwise;  // L x L, sum over t of P(y_{t-1} = a, y_t = b)
  double log_partition = 0.0;
};

// Forward-backward marginals.
CrfMarginals crf_marginals(const CrfScores& scores);

// Highest-scoring path. Ties go to the lowest label index, both at each
// back-pointer and for the final label.
Path viterbi_decode(const CrfScores& scores);

}  // namespace gazener::nn
