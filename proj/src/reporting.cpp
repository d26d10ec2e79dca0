#include "divbench/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "divbench/error.hpp"

namespace divbench {

namespace {

struct GroupKey {
  std::string model;
  Setting setting;
  std::string condition;
  friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string pair_key(const ResponseRecord& r) {
  return r.model_name + '\x1f' + std::string(to_string(r.setting)) + '\x1f' + r.prompt_id;
}

// Tables keyed by (model, setting, prompt) for one condition.
std::map<std::string, FrequencyTable> tables_by_pair_key(const ResponseFile& file,
                                                         std::string_view condition,
                                                         std::set<std::string>* present) {
  std::map<std::string, std::vector<const ResponseRecord*>> grouped;
  for (const auto& r : file.records) {
    if (r.condition != condition) continue;
    grouped[pair_key(r)].push_back(&r);
  }
  std::map<std::string, FrequencyTable> tables;
  for (const auto& [key, records] : grouped) {
    if (present) present->insert(key);
    std::vector<ResponseRecord> copies;
    copies.reserve(records.size());
    for (const auto* r : records) copies.push_back(*r);
    try {
      tables.emplace(key, build_frequency_table(copies));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyInput) throw;
    }
  }
  return tables;
}

MetricTest run_metric(std::string metric, const std::vector<double>& baseline,
                      const std::vector<double>& treatment, double alpha) {
  MetricTest out;
  out.metric = std::move(metric);
  try {
    out.result = paired_t_test(baseline, treatment);
    out.significant = out.result->p_two_sided < alpha;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::string format_decimal(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string out(buffer, ec == std::errc{} ? end : buffer);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

std::vector<FrequencyTable> condition_tables(const ResponseFile& file, std::string_view condition) {
  auto keyed = tables_by_pair_key(file, condition, nullptr);
  std::vector<FrequencyTable> tables;
  tables.reserve(keyed.size());
  for (auto& [key, table] : keyed) tables.push_back(std::move(table));
  std::stable_sort(tables.begin(), tables.end(),
                   [](const auto& l, const auto& r) { return l.prompt_id < r.prompt_id; });
  return tables;
}

std::vector<std::string> conditions_in(const ResponseFile& file) {
  std::set<std::string> tags;
  for (const auto& r : file.records) tags.insert(r.condition);
  return {tags.begin(), tags.end()};
}

std::vector<SummaryRow> build_summary(const ResponseFile& file) {
  std::vector<GroupKey> order;
  std::vector<std::vector<const ResponseRecord*>> members;
  for (const auto& r : file.records) {
    const GroupKey key{r.model_name, r.setting, r.condition};
    auto it = std::find(order.begin(), order.end(), key);
    if (it == order.end()) {
      order.push_back(key);
      members.emplace_back();
      it = order.end() - 1;
    }
    members[static_cast<std::size_t>(it - order.begin())].push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (std::size_t g = 0; g < order.size(); ++g) {
    std::vector<std::string> prompt_order;
    std::map<std::string, std::vector<ResponseRecord>> by_prompt;
    std::size_t failed = 0;
    for (const auto* r : members[g]) {
      if (!r->succeeded()) ++failed;
      auto& list = by_prompt[r->prompt_id];
      if (list.empty()) prompt_order.push_back(r->prompt_id);
      list.push_back(*r);
    }
    std::vector<DiversityStats> stats;
    for (const auto& id : prompt_order) {
      try {
        stats.push_back(diversity_stats(build_frequency_table(by_prompt[id])));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyInput) throw;
      }
    }
    if (stats.empty()) continue;
    const Aggregate agg = aggregate(stats);
    rows.push_back(SummaryRow{order[g].model, order[g].setting, order[g].condition,
                              agg.mean_entropy, agg.median_count, stats.size(), failed});
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyRun, "response file has no successful records");
  return rows;
}

std::vector<SummaryRow> build_summary(const std::filesystem::path& response_file) {
  return build_summary(read_response_file(response_file));
}

TTestReport build_ttest_report(const ResponseFile& file, std::string_view baseline,
                               std::string_view treatment, double alpha) {
  std::set<std::string> base_present;
  std::set<std::string> treat_present;
  const auto base_tables = tables_by_pair_key(file, baseline, &base_present);
  const auto treat_tables = tables_by_pair_key(file, treatment, &treat_present);
  if (base_present.empty()) {
    throw Error(ErrorCode::ConditionMissing, "no records for condition '" + std::string(baseline) + "'");
  }
  if (treat_present.empty()) {
    throw Error(ErrorCode::ConditionMissing, "no records for condition '" + std::string(treatment) + "'");
  }
  for (const auto& key : treat_present) {
    if (!base_present.contains(key)) {
      throw Error(ErrorCode::ConditionMissing, "prompt " + key.substr(key.rfind('\x1f') + 1) +
                                                   " missing from " + std::string(baseline));
    }
  }
  for (const auto& key : base_present) {
    if (!treat_present.contains(key)) {
      throw Error(ErrorCode::ConditionMissing, "prompt " + key.substr(key.rfind('\x1f') + 1) +
                                                   " missing from " + std::string(treatment));
    }
  }

  // Keys are sorted, so pairs follow prompt-id order. Prompts without any
  // successful reply under either condition cannot be paired.
  std::vector<double> base_counts, treat_counts, base_entropy, treat_entropy;
  for (const auto& [key, base_table] : base_tables) {
    const auto it = treat_tables.find(key);
    if (it == treat_tables.end()) continue;
    base_counts.push_back(static_cast<double>(count_unique(base_table)));
    treat_counts.push_back(static_cast<double>(count_unique(it->second)));
    base_entropy.push_back(entropy_bits(base_table));
    treat_entropy.push_back(entropy_bits(it->second));
  }

  TTestReport report;
  report.baseline = baseline;
  report.treatment = treatment;
  report.alpha = alpha;
  report.n_pairs = base_counts.size();
  report.count = run_metric("count", base_counts, treat_counts, alpha);
  report.entropy = run_metric("entropy", base_entropy, treat_entropy, alpha);
  return report;
}

std::string render_ttest_report(const TTestReport& report) {
  std::ostringstream out;
  out << "paired t-test: " << report.treatment << " vs " << report.baseline
      << " (n_pairs=" << report.n_pairs << ", alpha=" << format_decimal(report.alpha) << ")\n";
  out << "| Metric | Mean diff | t | df | p (two-sided) | Verdict |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const MetricTest* m : {&report.count, &report.entropy}) {
    out << "| " << m->metric << " | ";
    if (m->result) {
      const auto& r = *m->result;
      char p[32];
      std::snprintf(p, sizeof(p), "%.4g", r.p_two_sided);
      out << fixed(r.mean_diff, 4) << " | " << fixed(r.t_statistic, 4) << " | "
          << r.degrees_of_freedom << " | " << p << " | "
          << (m->significant ? "significant" : "not significant") << " |\n";
    } else {
      out << "- | - | - | - | " << m->error << " |\n";
    }
  }
  return out.str();
}

PlotKind plot_kind_from_string(std::string_view text) {
  if (text == "rank_curve") return PlotKind::rank_curve;
  if (text == "histogram") return PlotKind::histogram;
  throw Error(ErrorCode::StorageError, "unknown plot kind '" + std::string(text) + "'");
}

std::string plot_data_csv(const ResponseFile& file, PlotKind kind, int bin_width) {
  std::ostringstream out;
  out << (kind == PlotKind::rank_curve ? "condition,rank,avg_frequency\n"
                                       : "condition,bin_lower_edge,frequency\n");
  bool any = false;
  for (const auto& condition : conditions_in(file)) {
    const auto tables = condition_tables(file, condition);
    if (tables.empty()) continue;
    any = true;
    if (kind == PlotKind::rank_curve) {
      for (const auto& point : frequency_rank_curve(tables)) {
        out << condition << ',' << point.rank << ',' << format_decimal(point.avg_frequency)
            << '\n';
      }
    } else {
      std::vector<std::size_t> counts;
      for (const auto& table : tables) counts.push_back(count_unique(table));
      for (const auto& bin : unique_count_histogram(counts, bin_width)) {
        out << condition << ',' << bin.lower_edge << ',' << bin.frequency << '\n';
      }
    }
  }
  if (!any) throw Error(ErrorCode::EmptyRun, "response file has no successful records");
  return out.str();
}

void export_plot_data(const std::filesystem::path& response_file, PlotKind kind,
                      const std::filesystem::path& out_path, int bin_width) {
  const std::string csv = plot_data_csv(read_response_file(response_file), kind, bin_width);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::StorageError, "cannot write '" + out_path.string() + "'");
  out << csv;
  if (!out) throw Error(ErrorCode::StorageError, "write failed for '" + out_path.string() + "'");
}

std::string render_markdown_table(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no summary rows");
  std::ostringstream out;
  out << "| Model | Setting | Condition | Entropy | Count |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    const std::string count = row.n_prompts % 2 == 1 ? fixed(row.median_count, 0)
                                                     : fixed(row.median_count, 1);
    out << "| " << row.model_name << " | " << to_string(row.setting) << " | " << row.condition
        << " | " << fixed(row.mean_entropy_bits, 2) << " | " << count << " |\n";
  }
  return out.str();
}

}  // namespace divbench
