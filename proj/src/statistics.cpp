#include "divbench/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "divbench/error.hpp"

namespace divbench {

namespace {

// Continued fraction for I_x(a, b) (modified Lentz). Converges quickly for
// x < (a + 1) / (a + b + 2); callers use the symmetry relation otherwise.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 200'000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// I_x(a, b) given both x and y = 1 - x, so that callers can supply the
// complement without cancellation.
double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
  const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
  const double front = std::exp(a * log_x + b * log_y - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

FrequencyTable build_frequency_table(std::span<const ResponseRecord> records) {
  FrequencyTable table;
  bool first = true;
  for (const auto& record : records) {
    if (first) {
      table.prompt_id = record.prompt_id;
      table.condition = record.condition;
      first = false;
    } else if (record.prompt_id != table.prompt_id || record.condition != table.condition) {
      throw Error(ErrorCode::StorageError,
                  "records for one table must share prompt_id and condition");
    }
    if (!record.succeeded()) continue;
    for (const auto& item : record.items) {
      ++table.counts[item];
      ++table.total;
    }
  }
  if (table.total == 0) {
    throw Error(ErrorCode::EmptyInput, "no successful records for prompt '" + table.prompt_id +
                                           "' condition '" + table.condition + "'");
  }
  return table;
}

FrequencyTable frequency_table_from_lists(const std::vector<std::vector<std::string>>& lists,
                                          std::string prompt_id, std::string condition) {
  FrequencyTable table{std::move(prompt_id), std::move(condition), 0, {}};
  for (const auto& list : lists) {
    for (const auto& item : list) {
      ++table.counts[item];
      ++table.total;
    }
  }
  if (table.total == 0) throw Error(ErrorCode::EmptyInput, "no items");
  return table;
}

std::size_t count_unique(const FrequencyTable& table) { return table.counts.size(); }

double entropy_bits(const FrequencyTable& table) {
  const auto total = static_cast<double>(table.total);
  double h = 0.0;
  for (const auto& [item, count] : table.counts) {
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  // A single support point sums to -0.0.
  return h <= 0.0 ? 0.0 : h;
}

DiversityStats diversity_stats(const FrequencyTable& table) {
  return {table.prompt_id, table.condition, count_unique(table), entropy_bits(table)};
}

std::vector<std::size_t> frequency_by_rank(const FrequencyTable& table) {
  std::vector<std::pair<std::string_view, std::size_t>> entries(table.counts.begin(),
                                                                table.counts.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& l, const auto& r) { return l.second > r.second; });
  std::vector<std::size_t> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.second);
  return out;
}

std::vector<RankPoint> frequency_rank_curve(std::span<const FrequencyTable> tables) {
  if (tables.empty()) throw Error(ErrorCode::EmptyInput, "no frequency tables");
  std::vector<double> sums;
  for (const auto& table : tables) {
    const auto by_rank = frequency_by_rank(table);
    if (by_rank.size() > sums.size()) sums.resize(by_rank.size(), 0.0);
    for (std::size_t r = 0; r < by_rank.size(); ++r) sums[r] += static_cast<double>(by_rank[r]);
  }
  const auto n = static_cast<double>(tables.size());
  std::vector<RankPoint> curve;
  curve.reserve(sums.size());
  for (std::size_t r = 0; r < sums.size(); ++r) curve.push_back({r + 1, sums[r] / n});
  return curve;
}

std::vector<HistogramBin> unique_count_histogram(std::span<const std::size_t> counts,
                                                 int bin_width) {
  if (counts.empty()) throw Error(ErrorCode::EmptyInput, "no counts to bin");
  if (bin_width < 1) throw Error(ErrorCode::InvalidLength, "bin width must be >= 1");
  const auto width = static_cast<std::size_t>(bin_width);
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  const std::size_t first = *lo / width;
  const std::size_t last = *hi / width;
  std::vector<HistogramBin> bins;
  for (std::size_t b = first; b <= last; ++b) {
    bins.push_back({static_cast<long long>(b * width), 0});
  }
  for (const std::size_t v : counts) ++bins[v / width - first].frequency;
  return bins;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

Aggregate aggregate(std::span<const DiversityStats> stats) {
  if (stats.empty()) throw Error(ErrorCode::EmptyInput, "no per-prompt statistics");
  double entropy_sum = 0.0;
  std::vector<double> counts;
  counts.reserve(stats.size());
  for (const auto& s : stats) {
    entropy_sum += s.entropy_bits;
    counts.push_back(static_cast<double>(s.unique_count));
  }
  return {entropy_sum / static_cast<double>(stats.size()), median(std::move(counts))};
}

TTestResult paired_t_test(std::span<const double> baseline, std::span<const double> treatment) {
  if (baseline.size() != treatment.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(baseline.size()) + " baseline vs " +
                                               std::to_string(treatment.size()) + " treatment");
  }
  const std::size_t n = baseline.size();
  if (n < 2) throw Error(ErrorCode::TooFewPairs, "need at least 2 pairs, got " + std::to_string(n));

  std::vector<double> diffs(n);
  for (std::size_t i = 0; i < n; ++i) diffs[i] = treatment[i] - baseline[i];
  const bool constant =
      std::all_of(diffs.begin(), diffs.end(), [&](double d) { return d == diffs.front(); });

  const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (const double d : diffs) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (constant || !(sd > 0.0)) {
    throw Error(ErrorCode::DegenerateVariance, "paired differences have zero variance");
  }

  TTestResult result;
  result.n_pairs = n;
  result.mean_diff = mean;
  result.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.degrees_of_freedom = n - 1;
  const double p = 2.0 * student_t_sf(std::fabs(result.t_statistic),
                                      static_cast<double>(result.degrees_of_freedom));
  result.p_two_sided = std::clamp(p, 0.0, 1.0);
  return result;
}

double regularized_incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_sf(double t, double df) {
  if (!(df >= 1.0) || !std::isfinite(df)) {
    throw Error(ErrorCode::InvalidDf, "degrees of freedom must be >= 1");
  }
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x, y);
  return t > 0.0 ? tail : 1.0 - tail;
}

}  // namespace divbench
