#include "gazener/experiments/metrics.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace gazener::experiments {

std::vector<Span> extract_spans(std::span<const corpus::Tag> tags) {
  std::vector<Span> spans;
  std::optional<Span> open;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto tag = tags[i];
    const auto cls = corpus::entity_class(tag);
    const bool continues = corpus::is_inside(tag) && open && open->cls == *cls;
    if (continues) {
      open->end = static_cast<int>(i);
      continue;
    }
    if (open) spans.push_back(*open);
    open.reset();
    if (cls) open = Span{*cls, static_cast<int>(i), static_cast<int>(i)};
  }
  if (open) spans.push_back(*open);
  return spans;
}

double Counts::precision() const noexcept {
  const long predicted = true_positives + false_positives;
  return predicted == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(predicted);
}

double Counts::recall() const noexcept {
  const long gold = true_positives + false_negatives;
  return gold == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(gold);
}

double Counts::f1() const noexcept {
  const double p = precision();
  const double r = recall();
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

Counts& Counts::operator+=(const Counts& other) noexcept {
  true_positives += other.true_positives;
  false_positives += other.false_positives;
  false_negatives += other.false_negatives;
  return *this;
}

Scores scores_of(const Counts& counts) noexcept {
  return {counts.precision(), counts.recall(), counts.f1()};
}

EvalReport evaluate(std::span<const std::vector<corpus::Tag>> gold,
                    std::span<const std::vector<corpus::Tag>> predicted) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("evaluate: " + std::to_string(gold.size()) + " gold vs " +
                                std::to_string(predicted.size()) + " predicted sentences");
  }
  EvalReport report;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      throw std::invalid_argument("evaluate: length mismatch in sentence " + std::to_string(s));
    }
    auto gold_spans = extract_spans(gold[s]);
    auto pred_spans = extract_spans(predicted[s]);
    std::sort(gold_spans.begin(), gold_spans.end());
    std::sort(pred_spans.begin(), pred_spans.end());
    for (const auto& span : pred_spans) {
      auto& counts = report.per_class[static_cast<std::size_t>(span.cls)];
      if (std::binary_search(gold_spans.begin(), gold_spans.end(), span)) ++counts.true_positives;
      else ++counts.false_positives;
    }
    for (const auto& span : gold_spans) {
      if (!std::binary_search(pred_spans.begin(), pred_spans.end(), span)) {
        ++report.per_class[static_cast<std::size_t>(span.cls)].false_negatives;
      }
    }
  }
  for (const auto& counts : report.per_class) report.micro += counts;
  return report;
}

}  // namespace gazener::experiments
