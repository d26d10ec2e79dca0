#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divbench/response_store.hpp"
#include "divbench/statistics.hpp"

namespace divbench {

/// One summary-table row: mean entropy and median unique count over the
/// prompts of one (model, setting, condition).
struct SummaryRow {
  std::string model_name;
  Setting setting = Setting::unordered;
  std::string condition;
  double mean_entropy_bits = 0.0;
  double median_count = 0.0;
  std::size_t n_prompts = 0;
  std::size_t failed_record_count = 0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Per-prompt frequency tables for one condition, sorted by prompt id.
/// Prompts whose records all failed are left out.
std::vector<FrequencyTable> condition_tables(const ResponseFile& file, std::string_view condition);

/// Condition tags present in the file, sorted.
std::vector<std::string> conditions_in(const ResponseFile& file);

/// Rows in order of first appearance in the file. Throws EmptyRun when no
/// record succeeded.
std::vector<SummaryRow> build_summary(const ResponseFile& file);
std::vector<SummaryRow> build_summary(const std::filesystem::path& response_file);

struct MetricTest {
  std::string metric;                 // "count" or "entropy"
  std::optional<TTestResult> result;  // unset when the test could not run
  std::string error;                  // e.g. DegenerateVariance
  bool significant = false;           // p < alpha
};

struct TTestReport {
  std::string baseline;
  std::string treatment;
  double alpha = 0.05;
  std::size_t n_pairs = 0;
  MetricTest count;
  MetricTest entropy;
};

/// Paired tests of treatment vs baseline on per-prompt unique counts and
/// entropies. Throws ConditionMissing when a condition is absent or the
/// prompt sets differ. Statistics errors are recorded per metric.
TTestReport build_ttest_report(const ResponseFile& file, std::string_view baseline,
                               std::string_view treatment, double alpha = 0.05);

std::string render_ttest_report(const TTestReport& report);

enum class PlotKind { rank_curve, histogram };

PlotKind plot_kind_from_string(std::string_view text);

/// CSV with header "condition,rank,avg_frequency" or
/// "condition,bin_lower_edge,frequency", rows sorted by condition then key.
/// Throws EmptyRun when nothing succeeded.
std::string plot_data_csv(const ResponseFile& file, PlotKind kind, int bin_width = 10);

/// Writes plot_data_csv to `out_path`; nothing is written on error.
void export_plot_data(const std::filesystem::path& response_file, PlotKind kind,
                      const std::filesystem::path& out_path, int bin_width = 10);

/// Pipe table with columns Model, Setting, Condition, Entropy, Count. Entropy
/// has two decimals; the median count is an integer for an odd number of
/// prompts and carries one decimal for an even number. Throws EmptyInput.
std::string render_markdown_table(const std::vector<SummaryRow>& rows);

/// Shortest round-trip decimal, always with a fractional part ("5.0").
std::string format_decimal(double value);

}  // namespace divbench
