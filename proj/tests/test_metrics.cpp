#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gazener/experiments/folds.hpp"
#include "gazener/experiments/metrics.hpp"
#include "gazener/experiments/report.hpp"
#include "gazener/experiments/significance.hpp"
#include "gazener/experiments/trainer.hpp"

namespace gazener::experiments {
namespace {

using corpus::EntityClass;
using corpus::Tag;

constexpr Tag O = Tag::O;
constexpr Tag BP = Tag::BeginPerson, IP = Tag::InsidePerson;
constexpr Tag BO = Tag::BeginOrganization, IO = Tag::InsideOrganization;
constexpr Tag BL = Tag::BeginLocation, IL = Tag::InsideLocation;

using Seqs = std::vector<std::vector<Tag>>;

EvalReport eval(const Seqs& gold, const Seqs& pred) { return evaluate(gold, pred); }

void expect_counts(const Counts& c, long tp, long fp, long fn) {
  EXPECT_EQ(c.true_positives, tp);
  EXPECT_EQ(c.false_positives, fp);
  EXPECT_EQ(c.false_negatives, fn);
}

const Counts& of(const EvalReport& r, EntityClass cls) { return r.per_class[static_cast<std::size_t>(cls)]; }

TEST(Metrics, ClassErrorCase) {
  const auto r = eval({{O, BP, IP, O, O, BL, O}}, {{O, BP, IP, O, O, BO, O}});
  expect_counts(r.micro, 1, 1, 1);
  EXPECT_EQ(r.micro_scores().precision, 0.5);
  EXPECT_EQ(r.micro_scores().recall, 0.5);
  EXPECT_EQ(r.micro_scores().f1, 0.5);
  EXPECT_EQ(r.class_scores(EntityClass::Person).f1, 1.0);
  EXPECT_EQ(r.class_scores(EntityClass::Location).f1, 0.0);
  EXPECT_EQ(r.class_scores(EntityClass::Organization).f1, 0.0);
  expect_counts(of(r, EntityClass::Location), 0, 0, 1);
  expect_counts(of(r, EntityClass::Organization), 0, 1, 0);
}

TEST(Metrics, IdentityIsPerfect) {
  const Seqs gold{{BP, IP, O, BL}, {BO, IO, IO}, {O}};
  const auto r = eval(gold, gold);
  const auto s = r.micro_scores();
  EXPECT_EQ(s.precision, 1.0);
  EXPECT_EQ(s.recall, 1.0);
  EXPECT_EQ(s.f1, 1.0);
  for (const auto cls : corpus::kEntityClasses) EXPECT_EQ(r.class_scores(cls).f1, 1.0);
}

TEST(Metrics, BoundaryErrorIsFalsePositiveAndNegative) {
  const auto r = eval({{O, BP, IP, O}}, {{O, BP, IP, IP}});
  expect_counts(r.micro, 0, 1, 1);
  EXPECT_EQ(r.micro_scores().f1, 0.0);
  // Too short is also wrong.
  expect_counts(eval({{BL, IL}}, {{BL, O}}).micro, 0, 1, 1);
}

TEST(Metrics, MissedEntity) {
  const auto r = eval({{BP, O, BL}}, {{BP, O, O}});
  expect_counts(r.micro, 1, 0, 1);
  EXPECT_EQ(r.micro_scores().precision, 1.0);
  EXPECT_EQ(r.micro_scores().recall, 0.5);
  EXPECT_EQ(r.micro_scores().f1, 2.0 / 3.0);
}

TEST(Metrics, SpuriousOnlyAndEmpty) {
  const auto r = eval({{O, O}}, {{BO, O}});
  expect_counts(r.micro, 0, 1, 0);
  EXPECT_EQ(r.micro_scores().precision, 0.0);
  EXPECT_EQ(r.micro_scores().recall, 0.0);
  EXPECT_EQ(r.micro_scores().f1, 0.0);
  const auto none = eval({{O}}, {{O}});
  EXPECT_EQ(none.micro_scores().f1, 0.0);
}

TEST(Metrics, AdjacentAndStraySpans) {
  EXPECT_EQ(extract_spans(std::vector<Tag>{BP, BP, IP}),
            (std::vector<Span>{{EntityClass::Person, 0, 0}, {EntityClass::Person, 1, 2}}));
  EXPECT_EQ(extract_spans(std::vector<Tag>{O, IL, IL, IP}),
            (std::vector<Span>{{EntityClass::Location, 1, 2}, {EntityClass::Person, 3, 3}}));
  EXPECT_EQ(extract_spans(std::vector<Tag>{BO, IL}),
            (std::vector<Span>{{EntityClass::Organization, 0, 0}, {EntityClass::Location, 1, 1}}));
}

TEST(Metrics, CountsAggregateAcrossSentences) {
  const auto r = eval({{BP, O}, {BL, IL, O}, {BO}}, {{BP, O}, {BL, O, O}, {BO}});
  expect_counts(r.micro, 2, 1, 1);
  EXPECT_EQ(r.micro_scores().precision, 2.0 / 3.0);
  EXPECT_EQ(r.micro_scores().f1, 2.0 / 3.0);
}

TEST(Metrics, LengthMismatchThrows) {
  EXPECT_THROW(eval({{O, O}}, {{O}}), std::invalid_argument);
  EXPECT_THROW(eval({{O}}, {}), std::invalid_argument);
}

// Independent span reader: walk tokens, open on B or on an I that does not
// continue the current class.
std::set<std::tuple<int, int, int, int>> oracle_spans(const Seqs& seqs) {
  std::set<std::tuple<int, int, int, int>> out;
  for (int s = 0; s < static_cast<int>(seqs.size()); ++s) {
    const auto& t = seqs[static_cast<std::size_t>(s)];
    int cls = -1;
    int start = 0;
    for (int i = 0; i <= static_cast<int>(t.size()); ++i) {
      const int idx = i < static_cast<int>(t.size()) ? static_cast<int>(t[static_cast<std::size_t>(i)]) : 0;
      const int c = idx == 0 ? -1 : (idx - 1) / 2;
      const bool begin = idx != 0 && idx % 2 == 1;
      if (cls >= 0 && (c != cls || begin)) {
        out.insert({s, cls, start, i - 1});
        cls = -1;
      }
      if (c >= 0 && cls < 0) {
        cls = c;
        start = i;
      }
    }
  }
  return out;
}

TEST(Metrics, MatchesBruteForceOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    Seqs gold, pred;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < n; ++s) {
      const std::size_t len = 1 + rng() % 8;
      std::vector<Tag> g(len), p(len);
      for (std::size_t i = 0; i < len; ++i) {
        g[i] = corpus::tag_from_index(rng() % corpus::kTagCount);
        p[i] = rng() % 3 == 0 ? corpus::tag_from_index(rng() % corpus::kTagCount) : g[i];
      }
      gold.push_back(g);
      pred.push_back(p);
    }
    const auto gs = oracle_spans(gold);
    const auto ps = oracle_spans(pred);
    std::array<Counts, 3> cls{};
    for (const auto& sp : ps) {
      auto& c = cls[static_cast<std::size_t>(std::get<1>(sp))];
      gs.contains(sp) ? ++c.true_positives : ++c.false_positives;
    }
    for (const auto& sp : gs) {
      if (!ps.contains(sp)) ++cls[static_cast<std::size_t>(std::get<1>(sp))].false_negatives;
    }
    const auto r = evaluate(gold, pred);
    Counts sum;
    for (std::size_t c = 0; c < 3; ++c) {
      ASSERT_EQ(r.per_class[c].true_positives, cls[c].true_positives);
      ASSERT_EQ(r.per_class[c].false_positives, cls[c].false_positives);
      ASSERT_EQ(r.per_class[c].false_negatives, cls[c].false_negatives);
      sum += r.per_class[c];
    }
    ASSERT_EQ(r.micro.true_positives, sum.true_positives);
    ASSERT_EQ(r.micro.false_positives, sum.false_positives);
    ASSERT_EQ(r.micro.false_negatives, sum.false_negatives);

    // Sentence order does not matter.
    std::vector<std::size_t> order(gold.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Seqs g2, p2;
    for (const auto i : order) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    const auto r2 = evaluate(g2, p2);
    ASSERT_EQ(r2.micro.true_positives, r.micro.true_positives);
    ASSERT_EQ(r2.micro.false_positives, r.micro.false_positives);
  }
}

// Reference values from scipy.stats (ttest_rel with alternative='greater',
// t.sf).
TEST(Significance, MatchesReferenceTable) {
  const std::vector<double> b1{0.80, 0.82, 0.79, 0.85, 0.81, 0.78, 0.83, 0.80, 0.84, 0.82};
  const std::vector<double> a1{0.81, 0.84, 0.80, 0.85, 0.83, 0.80, 0.84, 0.82, 0.84, 0.85};
  auto r = paired_one_sided_ttest(b1, a1);
  EXPECT_NEAR(r.t_statistic, 4.58257569495584, 1e-9);
  EXPECT_NEAR(r.p_value, 0.0006614752921337473, 1e-10);
  EXPECT_EQ(r.degrees_of_freedom, 9);
  EXPECT_TRUE(r.significant);

  r = paired_one_sided_ttest(std::vector<double>{0.5, 0.6, 0.7}, std::vector<double>{0.52, 0.58, 0.75});
  EXPECT_NEAR(r.t_statistic, 0.8219949365267863, 1e-9);
  EXPECT_NEAR(r.p_value, 0.24874054618519698, 1e-10);
  EXPECT_FALSE(r.significant);

  r = paired_one_sided_ttest(std::vector<double>{0.9, 0.8, 0.85, 0.88}, std::vector<double>{0.85, 0.79, 0.86, 0.80});
  EXPECT_NEAR(r.t_statistic, -1.6124515496597105, 1e-9);
  EXPECT_NEAR(r.p_value, 0.8973705170637715, 1e-10);

  EXPECT_NEAR(student_t_upper_tail(0.0, 5), 0.5, 1e-15);
  EXPECT_NEAR(student_t_upper_tail(1.0, 1), 0.25, 1e-12);
  EXPECT_NEAR(student_t_upper_tail(2.0, 9), 0.03827641188535047, 1e-12);
  EXPECT_NEAR(student_t_upper_tail(-1.5, 4), 0.896, 1e-12);
  EXPECT_NEAR(student_t_upper_tail(3.25, 20), 0.0020053255801986327, 1e-12);
  EXPECT_NEAR(student_t_upper_tail(10.0, 3), 0.0010641995292070747, 1e-12);
}

TEST(Significance, DegenerateCases) {
  const std::vector<double> x{0.5, 0.25, 0.75};
  auto r = paired_one_sided_ttest(x, x);
  EXPECT_EQ(r.p_value, 0.5);
  EXPECT_FALSE(r.significant);
  const std::vector<double> plus{1.5, 1.25, 1.75};  // differences exactly +1
  r = paired_one_sided_ttest(x, plus);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_TRUE(r.significant);
  r = paired_one_sided_ttest(plus, x);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_THROW(paired_one_sided_ttest(std::vector<double>{1.0}, std::vector<double>{2.0}), std::invalid_argument);
  EXPECT_THROW(paired_one_sided_ttest(x, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST(Folds, TenFoldPartition) {
  const auto plans = make_folds(100, 10, 42);
  ASSERT_EQ(plans.size(), 10u);
  std::vector<int> tested;
  for (const auto& p : plans) {
    EXPECT_EQ(p.train.size(), 80u);
    EXPECT_EQ(p.dev.size(), 10u);
    EXPECT_EQ(p.test.size(), 10u);
    std::set<int> all(p.train.begin(), p.train.end());
    all.insert(p.dev.begin(), p.dev.end());
    all.insert(p.test.begin(), p.test.end());
    EXPECT_EQ(all.size(), 100u);
    tested.insert(tested.end(), p.test.begin(), p.test.end());
  }
  std::sort(tested.begin(), tested.end());
  std::vector<int> expected(100);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(tested, expected);
  // Dev of fold i is the test slice of fold i+1.
  EXPECT_EQ(plans[3].dev, plans[4].test);
  EXPECT_EQ(plans[9].dev, plans[0].test);
}

TEST(Folds, UnevenSizesAndDeterminism) {
  for (int n : {10, 37, 101, 503}) {
    const auto plans = make_folds(n, 10, 7);
    for (const auto& p : plans) {
      EXPECT_NEAR(static_cast<double>(p.test.size()), n / 10.0, 1.0);
      EXPECT_NEAR(static_cast<double>(p.dev.size()), n / 10.0, 1.0);
      EXPECT_EQ(p.train.size() + p.dev.size() + p.test.size(), static_cast<std::size_t>(n));
    }
  }
  const auto a = make_folds(200, 10, 5);
  const auto b = make_folds(200, 10, 5);
  const auto c = make_folds(200, 10, 6);
  EXPECT_EQ(a[2].test, b[2].test);
  EXPECT_NE(a[2].test, c[2].test);
  EXPECT_THROW(make_folds(5, 10, 1), std::invalid_argument);
  EXPECT_THROW(make_folds(50, 2, 1), std::invalid_argument);
}

TEST(Folds, CrossPlan) {
  const auto plans = make_cross_folds(700, 5, 3);
  ASSERT_EQ(plans.size(), 5u);
  std::set<int> devs;
  for (const auto& p : plans) {
    EXPECT_TRUE(p.train.empty());
    EXPECT_EQ(p.dev.size(), 140u);
    EXPECT_EQ(p.test.size(), 560u);
    std::set<int> all(p.dev.begin(), p.dev.end());
    all.insert(p.test.begin(), p.test.end());
    EXPECT_EQ(all.size(), 700u);
    for (const int d : p.dev) EXPECT_TRUE(devs.insert(d).second);
  }
  EXPECT_EQ(devs.size(), 700u);
}

TEST(EarlyStoppingTest, FlatAfterPeak) {
  EarlyStopping es(20);
  std::vector<double> dev{0.5, 0.6};
  dev.resize(40, 0.6);
  int stopped = 0;
  for (int epoch = 1; epoch <= 40; ++epoch) {
    es.observe(epoch, dev[static_cast<std::size_t>(epoch - 1)]);
    if (es.should_stop()) {
      stopped = epoch;
      break;
    }
  }
  EXPECT_EQ(stopped, 22);
  EXPECT_EQ(es.best_epoch(), 2);
  EXPECT_EQ(es.best_score(), 0.6);
}

TEST(EarlyStoppingTest, RisingNeverStops) {
  EarlyStopping es(3);
  for (int epoch = 1; epoch <= 50; ++epoch) {
    EXPECT_TRUE(es.observe(epoch, epoch / 100.0));
    EXPECT_FALSE(es.should_stop());
  }
  EXPECT_EQ(es.best_epoch(), 50);
}

TEST(EarlyStoppingTest, ZeroScoreCountsAsFirstBest) {
  EarlyStopping es(2);
  EXPECT_TRUE(es.observe(1, 0.0));
  EXPECT_FALSE(es.observe(2, 0.0));
  EXPECT_FALSE(es.observe(3, 0.0));
  EXPECT_TRUE(es.should_stop());
  EXPECT_EQ(es.best_epoch(), 1);
}

FoldResult fold_with(int id, long tp, long fp, long fn) {
  FoldResult f;
  f.fold_id = id;
  f.test.micro = {tp, fp, fn};
  f.test.per_class[0] = {tp, fp, fn};
  f.log.best_epoch = 3;
  f.log.stopped_epoch = 8;
  f.train_sentences = 8;
  f.dev_sentences = 1;
  f.test_sentences = 1;
  return f;
}

TEST(Report, TableLayout) {
  ExperimentReport base{"toy", "baseline", {fold_with(0, 1, 1, 1), fold_with(1, 1, 0, 0)}, std::nullopt};
  ExperimentReport gaze{"toy", "token", {fold_with(0, 2, 0, 0), fold_with(1, 1, 0, 0)}, 0.756};
  const auto t = paired_one_sided_ttest(base.fold_f1(), gaze.fold_f1());
  const std::vector<ReportRow> rows{{&base, std::nullopt}, {&gaze, t}};
  EXPECT_DOUBLE_EQ(base.mean_micro().f1, 0.75);
  const std::string table = format_results_table("toy", rows);
  EXPECT_EQ(table,
            "toy\n"
            "model                P       R       F\n"
            "baseline         75.00   75.00   75.00\n"
            "token           100.00  100.00  100.00\n"
            "lexicon coverage (token): 76%\n"
            "t-test (token > baseline): t=1 df=1 p=0.25\n");

  const std::string per_class = format_per_class(rows);
  EXPECT_EQ(per_class.substr(0, per_class.find('\n') + 1), "PERSON               P       R       F\n");
  EXPECT_NE(per_class.find("ORGANIZATION         P       R       F\n"), std::string::npos);

  std::ostringstream csv;
  write_fold_csv(csv, rows);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header,
            "name,mode,fold,train,dev,test,best_epoch,stopped_epoch,precision,recall,f1,PERSON_f1,ORGANIZATION_f1,"
            "LOCATION_f1");
  EXPECT_EQ(first, "toy,baseline,0,8,1,1,3,8,0.5,0.5,0.5,0.5,0,0");
}

TEST(Report, SignificantRowIsStarred) {
  ExperimentReport base{"toy", "baseline", {fold_with(0, 1, 1, 1), fold_with(1, 1, 1, 1), fold_with(2, 1, 1, 1)}, {}};
  ExperimentReport gaze{"toy", "token", {fold_with(0, 2, 0, 0), fold_with(1, 2, 0, 0), fold_with(2, 2, 0, 0)}, {}};
  const std::vector<ReportRow> rows{{&base, std::nullopt}, {&gaze, paired_one_sided_ttest(base.fold_f1(), gaze.fold_f1())}};
  EXPECT_NE(format_results_table("x", rows).find("\ntoken *"), std::string::npos);
}

}  // namespace
}  // namespace gazener::experiments
