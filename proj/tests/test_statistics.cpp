#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "divbench/error.hpp"
#include "divbench/statistics.hpp"

namespace divbench {
namespace {

using Lists = std::vector<std::vector<std::string>>;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::EmptyRun;
}

FrequencyTable table_of(const std::map<std::string, std::size_t>& counts) {
  FrequencyTable t;
  t.counts = counts;
  for (const auto& [item, n] : counts) t.total += n;
  return t;
}

ResponseRecord record(std::vector<std::string> items, ParseStatus status = ParseStatus::ok) {
  ResponseRecord r;
  r.prompt_id = "q1";
  r.condition = "regular";
  r.k = static_cast<int>(items.size());
  r.items = std::move(items);
  r.parse_status = status;
  return r;
}

TEST(FrequencyTable, ConcatenatesLists) {
  const auto t = frequency_table_from_lists({{"a", "b"}, {"a", "c"}});
  EXPECT_EQ(t.total, 4u);
  EXPECT_EQ(t.counts, (std::map<std::string, std::size_t>{{"a", 2}, {"b", 1}, {"c", 1}}));
  const auto dup = frequency_table_from_lists({{"a", "a"}});
  EXPECT_EQ(dup.total, 2u);
  EXPECT_EQ(dup.counts.at("a"), 2u);
}

TEST(FrequencyTable, FromRecordsSkipsFailures) {
  const std::vector<ResponseRecord> records{record({"a", "b"}), record({}, ParseStatus::failed),
                                            record({"a", "c"}, ParseStatus::recovered)};
  const auto t = build_frequency_table(records);
  EXPECT_EQ(t.prompt_id, "q1");
  EXPECT_EQ(t.condition, "regular");
  EXPECT_EQ(t.total, 4u);
  EXPECT_EQ(count_unique(t), 3u);
}

TEST(FrequencyTable, NoSuccessfulRecords) {
  EXPECT_EQ(code_of([] { build_frequency_table({}); }), ErrorCode::EmptyInput);
  const std::vector<ResponseRecord> failed{record({}, ParseStatus::failed)};
  EXPECT_EQ(code_of([&] { build_frequency_table(failed); }), ErrorCode::EmptyInput);
}

TEST(FrequencyTable, MixedCellsRejected) {
  std::vector<ResponseRecord> records{record({"a"}), record({"b"})};
  records[1].prompt_id = "q2";
  EXPECT_EQ(code_of([&] { build_frequency_table(records); }), ErrorCode::StorageError);
}

TEST(CountUnique, Examples) {
  EXPECT_EQ(count_unique(table_of({{"a", 2}, {"b", 1}, {"c", 1}})), 3u);
  EXPECT_EQ(count_unique(table_of({{"a", 999}})), 1u);
}

TEST(Entropy, ClosedForms) {
  EXPECT_NEAR(entropy_bits(table_of({{"a", 2}, {"b", 1}, {"c", 1}})), 1.5, 1e-12);
  std::map<std::string, std::size_t> uniform;
  for (char c = 'a'; c < 'i'; ++c) uniform[std::string(1, c)] = 1;
  EXPECT_NEAR(entropy_bits(table_of(uniform)), 3.0, 1e-12);
  EXPECT_EQ(entropy_bits(table_of({{"a", 5}})), 0.0);
  EXPECT_FALSE(std::signbit(entropy_bits(table_of({{"a", 5}}))));
}

// Direct summation over the explicit multiset: each occurrence contributes
// -(1/total) * log2(p(item)).
double multiset_entropy(const std::vector<std::string>& items) {
  std::map<std::string, int> counts;
  for (const auto& item : items) ++counts[item];
  double h = 0.0;
  for (const auto& item : items) {
    h -= std::log2(static_cast<double>(counts[item]) / items.size()) / items.size();
  }
  return h;
}

TEST(Entropy, MatchesMultisetOracleAndBounds) {
  std::mt19937 gen(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const int total = std::uniform_int_distribution<int>(1, 20)(gen);
    const int alphabet = std::uniform_int_distribution<int>(1, 8)(gen);
    std::vector<std::string> items;
    for (int i = 0; i < total; ++i) {
      items.push_back(std::string(1, static_cast<char>(
                                         'a' + std::uniform_int_distribution<int>(0, alphabet - 1)(gen))));
    }
    const auto t = frequency_table_from_lists({items});
    const double h = entropy_bits(t);
    EXPECT_NEAR(h, multiset_entropy(items), 1e-12);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(static_cast<double>(count_unique(t))) + 1e-12);
    EXPECT_EQ(h == 0.0, count_unique(t) == 1);
  }
}

TEST(Entropy, UpperBoundOnlyWhenUniform) {
  const auto skewed = table_of({{"a", 2}, {"b", 1}});
  EXPECT_LT(entropy_bits(skewed), 1.0 - 1e-6);
  const auto even = table_of({{"a", 3}, {"b", 3}, {"c", 3}});
  EXPECT_NEAR(entropy_bits(even), std::log2(3.0), 1e-12);
}

TEST(Entropy, SupportNeverShrinks) {
  Lists lists;
  std::size_t previous = 0;
  std::mt19937 gen(3);
  for (int i = 0; i < 50; ++i) {
    lists.push_back({std::to_string(gen() % 30), std::to_string(gen() % 30)});
    const auto now = count_unique(frequency_table_from_lists(lists));
    EXPECT_GE(now, previous);
    previous = now;
  }
}

TEST(DiversityStats, CarriesKeysAndMetrics) {
  auto t = table_of({{"a", 2}, {"b", 1}, {"c", 1}});
  t.prompt_id = "q9";
  t.condition = "word";
  const auto s = diversity_stats(t);
  EXPECT_EQ(s.prompt_id, "q9");
  EXPECT_EQ(s.condition, "word");
  EXPECT_EQ(s.unique_count, 3u);
  EXPECT_NEAR(s.entropy_bits, 1.5, 1e-12);
}

TEST(RankCurve, Examples) {
  const std::vector<FrequencyTable> one{table_of({{"a", 5}, {"b", 3}, {"c", 2}})};
  EXPECT_EQ(frequency_rank_curve(one), (std::vector<RankPoint>{{1, 5.0}, {2, 3.0}, {3, 2.0}}));
  const std::vector<FrequencyTable> two{table_of({{"a", 5}, {"b", 3}, {"c", 2}}),
                                        table_of({{"x", 4}, {"y", 4}})};
  EXPECT_EQ(frequency_rank_curve(two), (std::vector<RankPoint>{{1, 4.5}, {2, 3.5}, {3, 1.0}}));
  EXPECT_EQ(code_of([] { frequency_rank_curve({}); }), ErrorCode::EmptyInput);
}

TEST(RankCurve, TiesBrokenByItem) {
  EXPECT_EQ(frequency_by_rank(table_of({{"b", 2}, {"a", 2}, {"c", 5}})),
            (std::vector<std::size_t>{5, 2, 2}));
}

TEST(RankCurve, NonIncreasingAndSumsToMeanTotal) {
  std::mt19937 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FrequencyTable> tables;
    double total = 0.0;
    const int prompts = 1 + static_cast<int>(gen() % 5);
    for (int p = 0; p < prompts; ++p) {
      std::map<std::string, std::size_t> counts;
      const int n = 1 + static_cast<int>(gen() % 12);
      for (int i = 0; i < n; ++i) counts["i" + std::to_string(i)] = 1 + gen() % 9;
      tables.push_back(table_of(counts));
      total += static_cast<double>(tables.back().total);
    }
    const auto curve = frequency_rank_curve(tables);
    double sum = 0.0;
    for (std::size_t r = 0; r < curve.size(); ++r) {
      EXPECT_EQ(curve[r].rank, r + 1);
      if (r > 0) EXPECT_LE(curve[r].avg_frequency, curve[r - 1].avg_frequency);
      sum += curve[r].avg_frequency;
    }
    EXPECT_NEAR(sum, total / prompts, 1e-9);
  }
}

TEST(Histogram, Examples) {
  const std::vector<std::size_t> a{18, 22, 35};
  EXPECT_EQ(unique_count_histogram(a, 10),
            (std::vector<HistogramBin>{{10, 1}, {20, 1}, {30, 1}}));
  const std::vector<std::size_t> b{5, 5, 5};
  EXPECT_EQ(unique_count_histogram(b, 10), (std::vector<HistogramBin>{{0, 3}}));
  const std::vector<std::size_t> c{9, 10};
  EXPECT_EQ(unique_count_histogram(c, 10), (std::vector<HistogramBin>{{0, 1}, {10, 1}}));
  const std::vector<std::size_t> gap{3, 41};
  EXPECT_EQ(unique_count_histogram(gap, 10),
            (std::vector<HistogramBin>{{0, 1}, {10, 0}, {20, 0}, {30, 0}, {40, 1}}));
  EXPECT_EQ(code_of([] { unique_count_histogram({}, 10); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([&] { unique_count_histogram(a, 0); }), ErrorCode::InvalidLength);
}

TEST(Aggregate, Examples) {
  std::vector<DiversityStats> stats{{"q1", "r", 22, 3.0}, {"q2", "r", 22, 5.0}};
  const auto agg = aggregate(stats);
  EXPECT_DOUBLE_EQ(agg.mean_entropy, 4.0);
  EXPECT_DOUBLE_EQ(agg.median_count, 22.0);
  EXPECT_DOUBLE_EQ(median({22, 30, 32}), 30.0);
  EXPECT_DOUBLE_EQ(median({20, 30}), 25.0);
  EXPECT_DOUBLE_EQ(median({32, 22, 30}), 30.0);
  EXPECT_EQ(code_of([] { aggregate({}); }), ErrorCode::EmptyInput);
}

// Frozen high-precision reference (50-digit arithmetic): differences [1,2,3].
constexpr double kT123 = 3.46410161513775458705;
constexpr double kP123 = 0.074179900227448538;

TEST(PairedTTest, DifferencesOneTwoThree) {
  const std::vector<double> base{0, 0, 0};
  const std::vector<double> treat{1, 2, 3};
  const auto r = paired_t_test(base, treat);
  EXPECT_EQ(r.n_pairs, 3u);
  EXPECT_EQ(r.degrees_of_freedom, 2u);
  EXPECT_DOUBLE_EQ(r.mean_diff, 2.0);
  EXPECT_NEAR(r.t_statistic, kT123, 1e-12);
  EXPECT_NEAR(r.p_two_sided, kP123, 1e-12);
  const double closed = 1.0 - kT123 / std::sqrt(kT123 * kT123 + 2.0);
  EXPECT_NEAR(r.p_two_sided, closed, 1e-12);
}

TEST(PairedTTest, Errors) {
  const std::vector<double> three{1, 2, 3};
  const std::vector<double> shifted{2, 3, 4};
  const std::vector<double> two{1, 2};
  const std::vector<double> one{1};
  EXPECT_EQ(code_of([&] { paired_t_test(three, three); }), ErrorCode::DegenerateVariance);
  EXPECT_EQ(code_of([&] { paired_t_test(three, shifted); }), ErrorCode::DegenerateVariance);
  EXPECT_EQ(code_of([&] { paired_t_test(three, two); }), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([&] { paired_t_test(one, one); }), ErrorCode::TooFewPairs);
}

TEST(PairedTTest, TranslationInvarianceAndAntisymmetry) {
  std::mt19937 gen(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> base, treat, base_shift, treat_shift;
    for (int i = 0; i < 12; ++i) {
      base.push_back(noise(gen));
      treat.push_back(base.back() + 0.3 + noise(gen));
      const double c = static_cast<double>(i % 4);
      base_shift.push_back(base.back() + c);
      treat_shift.push_back(treat.back() + c);
    }
    const auto r = paired_t_test(base, treat);
    const auto shifted = paired_t_test(base_shift, treat_shift);
    EXPECT_NEAR(shifted.t_statistic, r.t_statistic, 1e-9);
    EXPECT_NEAR(shifted.p_two_sided, r.p_two_sided, 1e-9);
    const auto swapped = paired_t_test(treat, base);
    EXPECT_NEAR(swapped.t_statistic, -r.t_statistic, 1e-12);
    EXPECT_NEAR(swapped.p_two_sided, r.p_two_sided, 1e-12);
    EXPECT_EQ(std::signbit(r.t_statistic), std::signbit(r.mean_diff));
    EXPECT_GE(r.p_two_sided, 0.0);
    EXPECT_LE(r.p_two_sided, 1.0);
  }
}

TEST(StudentT, Examples) {
  for (double df : {1.0, 2.0, 7.0, 1e6}) EXPECT_EQ(student_t_sf(0.0, df), 0.5);
  EXPECT_NEAR(student_t_sf(1.0, 1.0), 0.25, 1e-15);
  EXPECT_NEAR(student_t_sf(3.4641, 2.0), 0.0370899809468657633, 1e-15);
  EXPECT_NEAR(student_t_sf(-1.0, 1.0), 0.75, 1e-15);
  EXPECT_EQ(code_of([] { student_t_sf(1.0, 0.5); }), ErrorCode::InvalidDf);
  EXPECT_EQ(code_of([] { student_t_sf(1.0, 0.0); }), ErrorCode::InvalidDf);
}

TEST(StudentT, MatchesBoostAcrossRange) {
  const std::vector<double> dfs{1, 2, 3, 4, 5, 7, 10, 15, 29, 30, 50, 99, 100, 250, 1000,
                                10000, 100000, 1000000};
  for (double df : dfs) {
    const boost::math::students_t dist(df);
    for (double t = -50.0; t <= 50.0; t += 0.125) {
      const double expected = boost::math::cdf(boost::math::complement(dist, t));
      ASSERT_NEAR(student_t_sf(t, df), expected, 1e-8) << "t=" << t << " df=" << df;
    }
  }
}

TEST(StudentT, SymmetryAndMonotonicity) {
  for (double df : {1.0, 3.0, 12.0, 99.0, 5000.0}) {
    double previous = 1.0;
    for (double t = -20.0; t <= 20.0; t += 0.05) {
      const double sf = student_t_sf(t, df);
      EXPECT_NEAR(sf + student_t_sf(-t, df), 1.0, 1e-10);
      EXPECT_LE(sf, previous + 1e-15);
      previous = sf;
    }
  }
}

TEST(IncompleteBeta, KnownValues) {
  EXPECT_NEAR(regularized_incomplete_beta(1.0, 1.0, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(2.0, 3.0, 0.4), 0.5248, 1e-13);
  EXPECT_EQ(regularized_incomplete_beta(2.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(2.0, 3.0, 1.0), 1.0);
}

}  // namespace
}  // namespace divbench
