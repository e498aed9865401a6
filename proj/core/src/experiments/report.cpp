#include "gazener/experiments/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "gazener/text_util.hpp"

namespace gazener::experiments {

namespace {

std::string label_of(const ReportRow& row) {
  std::string label = row.report->mode;
  if (row.versus_baseline && row.versus_baseline->significant) label += " *";
  return label;
}

std::string percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", 100.0 * value);
  return buffer;
}

std::size_t label_width(std::span<const ReportRow> rows) {
  std::size_t width = 12;  // "ORGANIZATION"
  for (const auto& row : rows) width = std::max(width, label_of(row).size());
  return width;
}

void write_row(std::ostringstream& out, const std::string& label, std::size_t width, const Scores& s) {
  out << label << std::string(width - label.size() + 2, ' ');
  for (const double v : {s.precision, s.recall, s.f1}) {
    const auto text = percent(v);
    out << std::string(8 - std::min<std::size_t>(8, text.size()), ' ') << text;
  }
  out << '\n';
}

void write_header(std::ostringstream& out, const std::string& first, std::size_t width) {
  out << first << std::string(width - std::min(width, first.size()) + 2, ' ') << "       P       R       F\n";
}

}  // namespace

std::string format_results_table(const std::string& title, std::span<const ReportRow> rows) {
  std::ostringstream out;
  const std::size_t width = label_width(rows);
  out << title << '\n';
  write_header(out, "model", width);
  for (const auto& row : rows) write_row(out, label_of(row), width, row.report->mean_micro());
  for (const auto& row : rows) {
    if (row.report->lexicon_coverage) {
      out << "lexicon coverage (" << row.report->mode << "): "
          << static_cast<int>(100.0 * *row.report->lexicon_coverage + 0.5) << "%\n";
    }
    if (row.versus_baseline) {
      out << "t-test (" << row.report->mode << " > baseline): t=" << format_double(row.versus_baseline->t_statistic)
          << " df=" << row.versus_baseline->degrees_of_freedom << " p=" << format_double(row.versus_baseline->p_value)
          << '\n';
    }
  }
  return out.str();
}

std::string format_per_class(std::span<const ReportRow> rows) {
  std::ostringstream out;
  const std::size_t width = label_width(rows);
  for (const auto cls : corpus::kEntityClasses) {
    write_header(out, std::string(corpus::entity_class_name(cls)), width);
    for (const auto& row : rows) write_row(out, label_of(row), width, row.report->mean_class(cls));
    out << '\n';
  }
  return out.str();
}

void write_fold_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "name,mode,fold,train,dev,test,best_epoch,stopped_epoch,precision,recall,f1";
  for (const auto cls : corpus::kEntityClasses) out << ',' << corpus::entity_class_name(cls) << "_f1";
  out << '\n';
  for (const auto& row : rows) {
    for (const auto& fold : row.report->folds) {
      const auto s = fold.test.micro_scores();
      out << row.report->name << ',' << row.report->mode << ',' << fold.fold_id << ',' << fold.train_sentences << ','
          << fold.dev_sentences << ',' << fold.test_sentences << ',' << fold.log.best_epoch << ','
          << fold.log.stopped_epoch << ',' << format_double(s.precision) << ',' << format_double(s.recall) << ','
          << format_double(s.f1);
      for (const auto cls : corpus::kEntityClasses) out << ',' << format_double(fold.test.class_scores(cls).f1);
      out << '\n';
    }
  }
}

}  // namespace gazener::experiments
