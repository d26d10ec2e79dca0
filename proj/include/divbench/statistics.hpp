#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "divbench/response_store.hpp"

namespace divbench {

/// Tally of normalized items over all successful replies to one prompt under
/// one condition (the concatenation of their lists).
struct FrequencyTable {
  std::string prompt_id;
  std::string condition;
  std::size_t total = 0;
  std::map<std::string, std::size_t> counts;
};

struct DiversityStats {
  std::string prompt_id;
  std::string condition;
  std::size_t unique_count = 0;
  double entropy_bits = 0.0;
};

struct TTestResult {
  std::size_t n_pairs = 0;
  double mean_diff = 0.0;
  double t_statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_two_sided = 1.0;
};

struct RankPoint {
  std::size_t rank = 0;  // 1-based
  double avg_frequency = 0.0;
  friend bool operator==(const RankPoint&, const RankPoint&) = default;
};

struct HistogramBin {
  long long lower_edge = 0;
  std::size_t frequency = 0;
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct Aggregate {
  double mean_entropy = 0.0;
  double median_count = 0.0;
};

/// Throws EmptyInput when no record succeeded. Failed records are skipped;
/// records must share prompt_id and condition (StorageError otherwise).
FrequencyTable build_frequency_table(std::span<const ResponseRecord> records);

/// Builds a table directly from item lists (tests and fixtures).
FrequencyTable frequency_table_from_lists(const std::vector<std::vector<std::string>>& lists,
                                          std::string prompt_id = {}, std::string condition = {});

std::size_t count_unique(const FrequencyTable& table);

/// Plug-in Shannon entropy in bits.
double entropy_bits(const FrequencyTable& table);

DiversityStats diversity_stats(const FrequencyTable& table);

/// Mean frequency at each rank across prompts, shorter sequences padded with
/// zeros. Throws EmptyInput.
std::vector<RankPoint> frequency_rank_curve(std::span<const FrequencyTable> tables);

/// One prompt's counts sorted descending, ties by ascending item.
std::vector<std::size_t> frequency_by_rank(const FrequencyTable& table);

/// Bins floor(v / width) from the lowest to the highest occupied bin, empty
/// bins included. Throws EmptyInput, or InvalidLength for width < 1.
std::vector<HistogramBin> unique_count_histogram(std::span<const std::size_t> counts,
                                                 int bin_width);

/// Mean entropy and median unique count. Throws EmptyInput.
Aggregate aggregate(std::span<const DiversityStats> stats);

double median(std::vector<double> values);

/// Paired two-sided t-test on treatment - baseline. Throws LengthMismatch,
/// TooFewPairs or DegenerateVariance.
TTestResult paired_t_test(std::span<const double> baseline, std::span<const double> treatment);

/// P(T > t) for Student's t with `df` degrees of freedom, via the
/// regularized incomplete beta function. Throws InvalidDf for df < 1.
double student_t_sf(double t, double df);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace divbench
