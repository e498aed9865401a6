#pragma once

#include <array>
#include <span>
#include <vector>

#include "gazener/corpus/labels.hpp"

namespace gazener::experiments {

struct Span {
  corpus::EntityClass cls;
  int start = 0;  // inclusive token index
  int end = 0;    // inclusive token index
  auto operator<=>(const Span&) const = default;
};

// Entity spans of an IOB sequence. A B-X, or an I-X that does not continue
// an open X span, starts a new span.
std::vector<Span> extract_spans(std::span<const corpus::Tag> tags);

struct Counts {
  long true_positives = 0;
  long false_positives = 0;
  long false_negatives = 0;

  double precision() const noexcept;
  double recall() const noexcept;
  // 2PR/(P+R), 0 when P+R = 0.
  double f1() const noexcept;
  Counts& operator+=(const Counts& other) noexcept;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Scores scores_of(const Counts& counts) noexcept;

struct EvalReport {
  Counts micro;
  std::array<Counts, corpus::kEntityClassCount> per_class{};

  Scores micro_scores() const noexcept { return scores_of(micro); }
  Scores class_scores(corpus::EntityClass cls) const noexcept {
    return scores_of(per_class[static_cast<std::size_t>(cls)]);
  }
};

// Exact-span matching: a predicted span is a true positive only if class,
// start and end all match a gold span. Throws std::invalid_argument when a
// sentence pair differs in length or the sentence counts differ.
EvalReport evaluate(std::span<const std::vector<corpus::Tag>> gold,
                    std::span<const std::vector<corpus::Tag>> predicted);

}  // namespace gazener::experiments
