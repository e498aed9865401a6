#include "gazener/nn/crf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gazener::nn {

namespace {

void check(const CrfScores& s) {
  const Eigen::Index l = s.emissions.rows();
  if (l == 0 || s.emissions.cols() == 0) throw std::invalid_argument("crf: empty emissions");
  if (s.transitions.rows() != l || s.transitions.cols() != l || s.start.size() != l || s.stop.size() != l) {
    throw std::invalid_argument("crf: inconsistent shapes");
  }
}

// alpha(:, t) = log-sum of all prefixes ending in each label at t.
Matrix forward_scores(const CrfScores& s) {
  const Eigen::Index l = s.emissions.rows();
  const Eigen::Index n = s.emissions.cols();
  Matrix alpha(l, n);
  alpha.col(0) = s.start + s.emissions.col(0);
  Vector tmp(l);
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index y = 0; y < l; ++y) {
      tmp = alpha.col(t - 1) + s.transitions.col(y);
      alpha(y, t) = log_sum_exp(tmp) + s.emissions(y, t);
    }
  }
  return alpha;
}

// beta(:, t) = log-sum of all suffixes after t given the label at t.
Matrix backward_scores(const CrfScores& s) {
  const Eigen::Index l = s.emissions.rows();
  const Eigen::Index n = s.emissions.cols();
  Matrix beta(l, n);
  beta.col(n - 1) = s.stop;
  Vector tmp(l);
  for (Eigen::Index t = n - 2; t >= 0; --t) {
    for (Eigen::Index y = 0; y < l; ++y) {
      tmp = s.transitions.row(y).transpose() + s.emissions.col(t + 1) + beta.col(t + 1);
      beta(y, t) = log_sum_exp(tmp);
    }
  }
  return beta;
}

}  // namespace

double log_sum_exp(const Eigen::Ref<const Vector>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

double crf_path_score(const CrfScores& s, std::span<const int> path) {
  check(s);
  if (static_cast<Eigen::Index>(path.size()) != s.emissions.cols()) {
    throw std::invalid_argument("crf_path_score: path length differs from sentence length");
  }
  double score = s.start[path.front()] + s.stop[path.back()];
  for (std::size_t t = 0; t < path.size(); ++t) {
    score += s.emissions(path[t], static_cast<Eigen::Index>(t));
    if (t > 0) score += s.transitions(path[t - 1], path[t]);
  }
  return score;
}

double crf_log_partition(const CrfScores& s) {
  check(s);
  const Matrix alpha = forward_scores(s);
  return log_sum_exp(alpha.col(alpha.cols() - 1) + s.stop);
}

double crf_nll(const CrfScores& s, std::span<const int> gold) {
  return crf_log_partition(s) - crf_path_score(s, gold);
}

CrfMarginals crf_marginals(const CrfScores& s) {
  check(s);
  const Eigen::Index l = s.emissions.rows();
  const Eigen::Index n = s.emissions.cols();
  const Matrix alpha = forward_scores(s);
  const Matrix beta = backward_scores(s);
  CrfMarginals m;
  m.log_partition = log_sum_exp(alpha.col(n - 1) + s.stop);
  m.unary = ((alpha + beta).array() - m.log_partition).exp().matrix();
  m.pairwise = Matrix::Zero(l, l);
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index a = 0; a < l; ++a) {
      for (Eigen::Index b = 0; b < l; ++b) {
        m.pairwise(a, b) += std::exp(alpha(a, t - 1) + s.transitions(a, b) + s.emissions(b, t) +
                                     beta(b, t) - m.log_partition);
      }
    }
  }
  return m;
}

Path viterbi_decode(const CrfScores& s) {
  check(s);
  const Eigen::Index l = s.emissions.rows();
  const Eigen::Index n = s.emissions.cols();
  Matrix best(l, n);
  Eigen::MatrixXi back(l, n);
  best.col(0) = s.start + s.emissions.col(0);
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index y = 0; y < l; ++y) {
      double top = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index p = 0; p < l; ++p) {
        const double v = best(p, t - 1) + s.transitions(p, y);
        if (v > top) {  // strict: the lowest index keeps ties
          top = v;
          arg = static_cast<int>(p);
        }
      }
      best(y, t) = top + s.emissions(y, t);
      back(y, t) = arg;
    }
  }
  Path path;
  path.labels.assign(static_cast<std::size_t>(n), 0);
  double top = -std::numeric_limits<double>::infinity();
  int last = 0;
  for (Eigen::Index y = 0; y < l; ++y) {
    const double v = best(y, n - 1) + s.stop[y];
    if (v > top) {
      top = v;
      last = static_cast<int>(y);
    }
  }
  path.score = top;
  path.labels[static_cast<std::size_t>(n - 1)] = last;
  for (Eigen::Index t = n - 1; t > 0; --t) {
    last = back(last, t);
    path.labels[static_cast<std::size_t>(t - 1)] = last;
  }
  return path;
}

}  // namespace gazener::nn
