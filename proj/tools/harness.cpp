// harness: run list-diversity experiments and report on them.
//
//   harness run --prompts P --setting ordered --conditions regular,word,sentence
//               --m 100 --seed 7 --backend mock --out DIR
//   harness report summary  --responses DIR
//   harness report ttest    --responses DIR --baseline regular --treatment word
//   harness report plotdata --responses DIR --kind rank_curve --out curve.csv
//   harness validate-mock
//   harness validate-prompts --prompts P
//   harness draft-prompts --n 20 --backend http --model NAME

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "divbench/error.hpp"
#include "divbench/model_backend.hpp"
#include "divbench/perturbation.hpp"
#include "divbench/prompt_dataset.hpp"
#include "divbench/reporting.hpp"
#include "divbench/run_orchestrator.hpp"

namespace fs = std::filesystem;
using namespace divbench;

namespace {

#ifndef DIVBENCH_DEFAULT_PROMPTS
#define DIVBENCH_DEFAULT_PROMPTS "data/prompts.jsonl"
#endif

struct BackendFlags {
  std::string backend = "mock";
  std::string model;
  double temperature = 0.9;
  int max_retries = 3;
  double timeout_s = 60.0;
  std::string base_url = HttpSettings{}.base_url;
  std::string path = HttpSettings{}.path;
  std::string api_key_env = HttpSettings{}.api_key_env;
  int vocab_size = 200;
  double zipf_exponent = 1.1;
  bool context_insensitive = false;
  bool verbose = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--backend", backend, "Model backend")
        ->check(CLI::IsMember({"http", "mock"}))
        ->capture_default_str();
    cmd.add_option("--model", model, "Model name (default: mock-zipf for mock)");
    cmd.add_option("--temperature", temperature, "Sampling temperature")
        ->check(CLI::Range(0.0, 2.0))
        ->capture_default_str();
    cmd.add_option("--max-retries", max_retries, "HTTP retries on transient errors")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--timeout", timeout_s, "HTTP request timeout in seconds")->capture_default_str();
    cmd.add_option("--base-url", base_url, "Chat-completion base URL")->capture_default_str();
    cmd.add_option("--path", path, "Chat-completion request path")->capture_default_str();
    cmd.add_option("--api-key-env", api_key_env,
                   "Environment variable holding the API key (empty: none)")
        ->capture_default_str();
    cmd.add_option("--vocab-size", vocab_size, "Mock vocabulary size")->capture_default_str();
    cmd.add_option("--zipf-exponent", zipf_exponent, "Mock Zipf exponent")->capture_default_str();
    cmd.add_flag("--context-insensitive", context_insensitive,
                 "Mock ignores the injected context");
    cmd.add_flag("--verbose", verbose, "Log HTTP requests and responses to stderr");
  }

  ModelConfig model_config() const {
    ModelConfig config;
    config.backend = backend_kind_from_string(backend);
    config.model_name = !model.empty() ? model
                        : config.backend == BackendKind::mock ? "mock-zipf"
                                                              : "default";
    config.temperature = temperature;
    config.max_retries = max_retries;
    config.request_timeout =
        std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
    config.http = HttpSettings{base_url, path, api_key_env};
    return config;
  }

  std::optional<MockConfig> mock_config() const {
    if (backend != "mock") return std::nullopt;
    return MockConfig{vocab_size, zipf_exponent, !context_insensitive};
  }

  std::function<void(std::string_view)> logger() const {
    if (!verbose) return {};
    return [](std::string_view line) { std::cerr << line << '\n'; };
  }
};

std::vector<ContextSpec> parse_conditions(const std::vector<std::string>& tags, int num_words) {
  std::vector<ContextSpec> out;
  for (const auto& tag : tags) out.push_back(ContextSpec::parse(tag, num_words));
  return out;
}

fs::path resolve_responses(const fs::path& p) {
  return fs::is_directory(p) ? p / "responses.jsonl" : p;
}

void print_summary(const RunSummary& s) {
  std::cout << "records: " << s.total_records << " (ok " << s.ok << ", recovered " << s.recovered
            << ", failed " << s.failed << ")\n"
            << "cells executed: " << s.cells_executed << ", backend queries: " << s.queries_issued
            << "\n"
            << "complete: " << (s.complete ? "yes" : "no") << "\n"
            << "output: " << s.output_path.string() << "\n";
}

// The directional check behind the README's "validate-mock" section:
// context-sensitive mock, synthetic prompts, regular vs one random word.
int validate_mock(int n_prompts, int m, std::uint64_t seed, const fs::path& out_dir,
                  int parallelism) {
  fs::create_directories(out_dir);
  const fs::path dataset = out_dir / "synthetic_prompts.jsonl";
  save_prompts(synthetic_prompts(n_prompts), dataset);

  RunConfig config;
  config.dataset_path = dataset;
  config.setting = Setting::unordered;
  config.conditions = {ContextSpec::regular(), ContextSpec::words(1)};
  config.m = m;
  config.master_seed = seed;
  config.parallelism = parallelism;
  config.model.model_name = "mock-zipf";
  config.mock = MockConfig{};
  config.output_dir = out_dir;
  fs::remove(response_path(config));

  const RunSummary run = execute_run(config);
  print_summary(run);
  const ResponseFile file = read_response_file(run.output_path);
  const auto rows = build_summary(file);
  std::cout << '\n' << render_markdown_table(rows) << '\n';
  const TTestReport report = build_ttest_report(file, "regular", "word");
  std::cout << render_ttest_report(report) << '\n';

  const auto find_row = [&](std::string_view tag) {
    for (const auto& r : rows) {
      if (r.condition == tag) return r;
    }
    throw Error(ErrorCode::ConditionMissing, std::string(tag));
  };
  const SummaryRow regular = find_row("regular");
  const SummaryRow word = find_row("word");
  const auto regular_curve = frequency_rank_curve(condition_tables(file, "regular"));
  const auto word_curve = frequency_rank_curve(condition_tables(file, "word"));
  const auto tail = [](const std::vector<RankPoint>& curve) {
    double sum = 0.0;
    for (const auto& p : curve) {
      if (p.rank > 50) sum += p.avg_frequency;
    }
    return sum;
  };

  struct Check {
    const char* name;
    bool pass;
  };
  const Check checks[] = {
      {"mean entropy higher with a random word", word.mean_entropy_bits > regular.mean_entropy_bits},
      {"median count higher with a random word", word.median_count > regular.median_count},
      {"count difference significant (p < 0.05)", report.count.significant},
      {"entropy difference significant (p < 0.05)", report.entropy.significant},
      {"rank-1 frequency lower with a random word",
       word_curve.front().avg_frequency < regular_curve.front().avg_frequency},
      {"tail mass beyond rank 50 higher with a random word", tail(word_curve) > tail(regular_curve)},
  };
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"List-diversity benchmarking harness"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute (or resume) an experiment grid");
  std::string prompts_path = DIVBENCH_DEFAULT_PROMPTS;
  std::string setting = "unordered";
  std::vector<std::string> conditions{"regular", "word", "sentence"};
  int num_words = 1;
  int m = 100;
  std::uint64_t seed = 0;
  int parallelism = 4;
  std::string wordlists;
  std::string out_dir;
  bool resume = false;
  std::size_t limit = 0;
  BackendFlags run_backend;
  run_cmd->add_option("--prompts", prompts_path, "Prompts JSONL file")->capture_default_str();
  run_cmd->add_option("--setting", setting, "Prompt phrasing")
      ->check(CLI::IsMember({"ordered", "unordered"}))
      ->capture_default_str();
  run_cmd->add_option("--conditions,--condition", conditions,
                      "Comma-separated: regular, word, word-N, sentence, string")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--num-words", num_words, "Words per context for bare 'word'")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  run_cmd->add_option("--m", m, "Repetitions per prompt and condition")->capture_default_str();
  run_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  run_cmd->add_option("--parallelism", parallelism, "Concurrent backend queries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--wordlists", wordlists, "Word list override JSON");
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_flag("--resume", resume, "Continue an interrupted run in --out");
  run_cmd->add_option("--limit", limit, "Stop after this many new cells (0: no limit)");
  run_backend.add_to(*run_cmd);

  // report
  auto* report_cmd = app.add_subcommand("report", "Summaries, t-tests and plot data");
  report_cmd->require_subcommand(1);
  std::string responses;
  auto* summary_cmd = report_cmd->add_subcommand("summary", "Mean entropy / median count table");
  summary_cmd->add_option("--responses", responses, "Response file or run directory")->required();
  bool summary_details = false;
  summary_cmd->add_flag("--details", summary_details, "Also list prompt and failure counts");

  auto* ttest_cmd = report_cmd->add_subcommand("ttest", "Paired t-tests between two conditions");
  std::string baseline = "regular";
  std::string treatment = "word";
  double alpha = 0.05;
  ttest_cmd->add_option("--responses", responses, "Response file or run directory")->required();
  ttest_cmd->add_option("--baseline", baseline)->capture_default_str();
  ttest_cmd->add_option("--treatment", treatment)->capture_default_str();
  ttest_cmd->add_option("--alpha", alpha, "Significance level")->capture_default_str();

  auto* plot_cmd = report_cmd->add_subcommand("plotdata", "CSV for rank curves or histograms");
  std::string kind = "rank_curve";
  std::string plot_out;
  int bin_width = 10;
  plot_cmd->add_option("--responses", responses, "Response file or run directory")->required();
  plot_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"rank_curve", "histogram"}))
      ->capture_default_str();
  plot_cmd->add_option("--out", plot_out, "CSV path (stdout when omitted)");
  plot_cmd->add_option("--bin-width", bin_width, "Histogram bin width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // validate-mock
  auto* mock_cmd =
      app.add_subcommand("validate-mock", "Check the directional effect on the mock backend");
  int mock_prompts = 100;
  int mock_m = 100;
  std::uint64_t mock_seed = 7;
  std::string mock_out = (fs::temp_directory_path() / "divbench-validate-mock").string();
  mock_cmd->add_option("--prompts-count", mock_prompts)->capture_default_str();
  mock_cmd->add_option("--m", mock_m)->capture_default_str();
  mock_cmd->add_option("--seed", mock_seed)->capture_default_str();
  mock_cmd->add_option("--out", mock_out)->capture_default_str();
  mock_cmd->add_option("--parallelism", parallelism)->capture_default_str();

  // validate-prompts
  auto* validate_cmd = app.add_subcommand("validate-prompts", "Check a prompts file");
  validate_cmd->add_option("--prompts", prompts_path)->capture_default_str();

  // draft-prompts
  auto* draft_cmd =
      app.add_subcommand("draft-prompts", "Ask a model for candidate prompts (JSONL on stdout)");
  int draft_n = 10;
  int draft_k = 10;
  std::vector<std::string> topics;
  BackendFlags draft_backend;
  draft_cmd->add_option("--n", draft_n, "Number of candidates to request")->capture_default_str();
  draft_cmd->add_option("--k", draft_k, "List length in the drafted questions")
      ->capture_default_str();
  draft_cmd->add_option("--topic", topics, "Topic hint (repeatable)");
  draft_cmd->add_option("--seed", seed)->capture_default_str();
  draft_backend.add_to(*draft_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      RunConfig config;
      config.dataset_path = prompts_path;
      config.setting = setting_from_string(setting);
      config.conditions = parse_conditions(conditions, num_words);
      config.m = m;
      config.master_seed = seed;
      config.parallelism = parallelism;
      config.model = run_backend.model_config();
      config.mock = run_backend.mock_config();
      if (!wordlists.empty()) config.wordlists_path = wordlists;
      config.output_dir = out_dir;

      RunOptions options;
      options.log = run_backend.logger();
      if (limit > 0) options.max_new_cells = limit;
      const fs::path path = response_path(config);
      const RunSummary summary = resume && fs::exists(path)
                                     ? resume_run(config, path, options)
                                     : execute_run(config, options);
      print_summary(summary);
      return 0;
    }
    if (summary_cmd->parsed()) {
      const auto rows = build_summary(resolve_responses(responses));
      std::cout << render_markdown_table(rows);
      if (summary_details) {
        std::cout << '\n';
        for (const auto& r : rows) {
          std::cout << r.condition << ": prompts=" << r.n_prompts
                    << " failed_records=" << r.failed_record_count << '\n';
        }
      }
      return 0;
    }
    if (ttest_cmd->parsed()) {
      const auto file = read_response_file(resolve_responses(responses));
      std::cout << render_ttest_report(build_ttest_report(file, baseline, treatment, alpha));
      return 0;
    }
    if (plot_cmd->parsed()) {
      const auto plot_kind = plot_kind_from_string(kind);
      if (plot_out.empty()) {
        std::cout << plot_data_csv(read_response_file(resolve_responses(responses)), plot_kind,
                                   bin_width);
      } else {
        export_plot_data(resolve_responses(responses), plot_kind, plot_out, bin_width);
      }
      return 0;
    }
    if (mock_cmd->parsed()) {
      return validate_mock(mock_prompts, mock_m, mock_seed, mock_out, parallelism);
    }
    if (validate_cmd->parsed()) {
      const auto records = load_prompts(prompts_path);
      std::cout << records.size() << " valid prompts in " << prompts_path << '\n';
      return 0;
    }
    if (draft_cmd->parsed()) {
      const ModelConfig model = draft_backend.model_config();
      auto backend = make_backend(model, draft_backend.mock_config(), draft_backend.logger());
      const auto candidates = draft_prompts(*backend, draft_n, topics, draft_k, seed);
      write_prompts(candidates, std::cout);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
