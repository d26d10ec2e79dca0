#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divbench/model_backend.hpp"
#include "divbench/perturbation.hpp"
#include "divbench/prompt_dataset.hpp"
#include "divbench/response_store.hpp"

namespace divbench {

struct RunConfig {
  std::filesystem::path dataset_path;
  Setting setting = Setting::unordered;
  std::vector<ContextSpec> conditions{ContextSpec::regular()};
  int m = 100;
  std::uint64_t master_seed = 0;
  int parallelism = 4;
  ModelConfig model;
  std::optional<MockConfig> mock;
  std::optional<std::filesystem::path> wordlists_path;  // embedded lists when unset
  std::filesystem::path output_dir;

  /// Throws DatasetError for m < 1, an empty or repeated condition list, or
  /// parallelism < 1.
  void validate() const;
};

/// Hooks that do not affect what a run computes.
struct RunOptions {
  /// Timestamp for each record; UTC ISO-8601 wall clock when unset.
  std::function<std::string()> clock;
  /// Stop after this many newly executed cells (budgeting, interruption tests).
  std::optional<std::size_t> max_new_cells;
  /// Used instead of the backend named by RunConfig::model.
  Backend* backend = nullptr;
  std::function<void(std::string_view)> log;
};

struct RunSummary {
  std::size_t total_records = 0;
  std::size_t ok = 0;
  std::size_t recovered = 0;
  std::size_t failed = 0;
  std::size_t cells_executed = 0;  // cells added by this invocation
  std::size_t queries_issued = 0;  // backend calls, re-queries included
  bool complete = false;           // every cell of the grid is present
  std::filesystem::path output_path;
};

/// responses.jsonl inside the output directory.
std::filesystem::path response_path(const RunConfig& config);

/// Header written at the top of the response file; fingerprint covers the
/// dataset bytes, setting, conditions, m, master seed, model name, mock
/// parameters and word lists.
RunHeader make_run_header(const RunConfig& config);

/// Runs the whole prompts x conditions x m grid into a new response file.
/// Throws StorageError if the file already exists; backend failures are
/// recorded as failed records, never thrown.
RunSummary execute_run(const RunConfig& config, const RunOptions& options = {});

/// Executes only the cells missing from `existing` and appends them. Throws
/// ConfigMismatch when the file was produced by a different configuration.
RunSummary resume_run(const RunConfig& config, const std::filesystem::path& existing,
                      const RunOptions& options = {});

}  // namespace divbench
