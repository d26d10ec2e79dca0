#include "divbench/run_orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "divbench/error.hpp"
#include "divbench/rng.hpp"

namespace divbench {

namespace {

using nlohmann::json;

struct Cell {
  const PromptRecord* prompt;
  const ContextSpec* condition;
  std::string tag;
  int rep;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::uint64_t wordlists_hash(const RunConfig& config) {
  return config.wordlists_path ? dataset_content_hash(*config.wordlists_path) : 0;
}

std::vector<std::string> condition_tags(const RunConfig& config) {
  std::vector<std::string> tags;
  for (const auto& c : config.conditions) tags.push_back(c.tag());
  return tags;
}

std::vector<PromptRecord> load_dataset(const RunConfig& config) {
  try {
    return load_prompts(config.dataset_path);
  } catch (const Error& e) {
    throw Error(ErrorCode::DatasetError, e.what());
  }
}

class Runner {
 public:
  Runner(const RunConfig& config, const RunOptions& options)
      : config_(config), options_(options) {
    config_.validate();
    prompts_ = load_dataset(config_);
    words_ = config_.wordlists_path ? load_word_lists(*config_.wordlists_path)
                                    : default_word_lists();
    if (options_.backend != nullptr) {
      backend_ = options_.backend;
    } else {
      if (config_.model.backend == BackendKind::mock && config_.mock) {
        for (const auto& p : prompts_) config_.mock->validate(p.k);
      }
      owned_backend_ = make_backend(config_.model, config_.mock, options_.log);
      backend_ = owned_backend_.get();
    }
    for (const auto& prompt : prompts_) {
      for (const auto& condition : config_.conditions) {
        for (int rep = 0; rep < config_.m; ++rep) {
          grid_.push_back(Cell{&prompt, &condition, condition.tag(), rep});
        }
      }
    }
  }

  RunSummary run(ResponseWriter& writer, const std::vector<ResponseRecord>& existing) {
    std::set<CellKey> done;
    for (const auto& r : existing) done.insert(cell_key(r));

    std::vector<const Cell*> pending;
    for (const auto& cell : grid_) {
      if (!done.contains({cell.prompt->id, config_.setting, cell.tag, cell.rep})) {
        pending.push_back(&cell);
      }
    }
    if (options_.max_new_cells && pending.size() > *options_.max_new_cells) {
      pending.resize(*options_.max_new_cells);
    }

    execute(pending, writer);

    RunSummary summary;
    std::set<CellKey> all = std::move(done);
    for (const auto& r : existing) tally(summary, r);
    for (const auto& r : written_) {
      tally(summary, r);
      all.insert(cell_key(r));
    }
    summary.cells_executed = written_.size();
    summary.queries_issued = queries_.load();
    summary.complete = all.size() == grid_.size();
    return summary;
  }

 private:
  static void tally(RunSummary& summary, const ResponseRecord& r) {
    ++summary.total_records;
    switch (r.parse_status) {
      case ParseStatus::ok: ++summary.ok; break;
      case ParseStatus::recovered: ++summary.recovered; break;
      case ParseStatus::failed: ++summary.failed; break;
    }
  }

  ResponseRecord run_cell(const Cell& cell) {
    const std::string rep = std::to_string(cell.rep);
    const std::uint64_t cell_seed =
        derive_seed(config_.master_seed, {cell.prompt->id, cell.tag, rep});

    ResponseRecord record;
    record.prompt_id = cell.prompt->id;
    record.setting = config_.setting;
    record.condition = cell.tag;
    record.rep_index = cell.rep;
    record.k = cell.prompt->k;
    record.model_name = config_.model.model_name;
    record.seed_fingerprint = to_hex(cell_seed);

    RngStream context_rng(derive_seed(cell_seed, {"context"}));
    const std::string context = make_context(*cell.condition, words_, context_rng);
    const InjectedPrompt prompt = inject(context, prompt_text(*cell.prompt, config_.setting));
    record.context_text = prompt.context_text;
    record.full_prompt_text = prompt.full_text;

    // A reply that fails to parse gets one fresh query with the same context.
    for (int attempt = 0; attempt < 2; ++attempt) {
      RngStream query_rng(derive_seed(cell_seed, {"query", std::to_string(attempt)}));
      ++queries_;
      try {
        GenerationResult result = query(*backend_, prompt, cell.prompt->k, query_rng);
        record.raw_text = std::move(result.raw_text);
        record.parse_status = result.parse_status;
        record.error = result.failure_reason;
        record.items.clear();
        for (const auto& item : result.items) record.items.push_back(normalize_item(item));
      } catch (const Error& e) {
        record.parse_status = ParseStatus::failed;
        record.error = e.what();
        record.items.clear();
        break;
      }
      if (record.succeeded()) break;
    }
    record.timestamp = options_.clock ? options_.clock() : utc_now();
    return record;
  }

  // Workers fill slots in any order; this thread appends them in grid order
  // so the file never depends on scheduling.
  void execute(const std::vector<const Cell*>& pending, ResponseWriter& writer) {
    if (pending.empty()) return;
    std::vector<std::optional<ResponseRecord>> slots(pending.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr worker_error;

    const auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= pending.size() || stop.load()) return;
        try {
          ResponseRecord record = run_cell(*pending[i]);
          std::lock_guard lock(mutex);
          slots[i] = std::move(record);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!worker_error) worker_error = std::current_exception();
          stop = true;
        }
        ready.notify_all();
      }
    };

    const auto threads =
        std::min<std::size_t>(static_cast<std::size_t>(config_.parallelism), pending.size());
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);

    try {
      for (std::size_t i = 0; i < pending.size(); ++i) {
        ResponseRecord record;
        {
          std::unique_lock lock(mutex);
          ready.wait(lock, [&] { return slots[i].has_value() || worker_error; });
          if (worker_error) std::rethrow_exception(worker_error);
          record = std::move(*slots[i]);
          slots[i].reset();
        }
        writer.append(record);
        written_.push_back(std::move(record));
      }
    } catch (...) {
      stop = true;
      pool.clear();
      throw;
    }
  }

  RunConfig config_;
  RunOptions options_;
  std::vector<PromptRecord> prompts_;
  WordLists words_;
  std::unique_ptr<Backend> owned_backend_;
  Backend* backend_ = nullptr;
  std::vector<Cell> grid_;
  std::vector<ResponseRecord> written_;
  std::atomic<std::size_t> queries_{0};
};

}  // namespace

void RunConfig::validate() const {
  if (m < 1) throw Error(ErrorCode::DatasetError, "m must be >= 1");
  if (parallelism < 1) throw Error(ErrorCode::DatasetError, "parallelism must be >= 1");
  if (conditions.empty()) throw Error(ErrorCode::DatasetError, "no conditions given");
  std::set<std::string> tags;
  for (const auto& c : conditions) {
    c.validate();
    if (!tags.insert(c.tag()).second) {
      throw Error(ErrorCode::DatasetError, "condition '" + c.tag() + "' listed twice");
    }
  }
  model.validate();
}

std::filesystem::path response_path(const RunConfig& config) {
  return config.output_dir / "responses.jsonl";
}

RunHeader make_run_header(const RunConfig& config) {
  const std::uint64_t dataset_hash = dataset_content_hash(config.dataset_path);
  json mock = nullptr;
  if (config.mock) {
    mock = {{"vocab_size", config.mock->vocab_size},
            {"zipf_exponent", config.mock->zipf_exponent},
            {"context_sensitive", config.mock->context_sensitive}};
  }
  const json identity = {{"dataset_hash", to_hex(dataset_hash)},
                         {"setting", to_string(config.setting)},
                         {"conditions", condition_tags(config)},
                         {"m", config.m},
                         {"master_seed", config.master_seed},
                         {"model_name", config.model.model_name},
                         {"mock", mock},
                         {"wordlists_hash", to_hex(wordlists_hash(config))}};

  RunHeader header;
  header.fingerprint = to_hex(fnv1a64(identity.dump()));
  header.config = identity;
  header.config["dataset_path"] = config.dataset_path.string();
  header.config["backend"] = to_string(config.model.backend);
  header.config["temperature"] = config.model.temperature;
  return header;
}

RunSummary execute_run(const RunConfig& config, const RunOptions& options) {
  Runner runner(config, options);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::StorageError,
                "cannot create '" + config.output_dir.string() + "': " + ec.message());
  }
  const auto path = response_path(config);
  if (std::filesystem::exists(path)) {
    throw Error(ErrorCode::StorageError, path.string() + " already exists; resume it instead");
  }
  ResponseWriter writer = ResponseWriter::create(path, make_run_header(config));
  RunSummary summary = runner.run(writer, {});
  summary.output_path = path;
  return summary;
}

RunSummary resume_run(const RunConfig& config, const std::filesystem::path& existing,
                      const RunOptions& options) {
  Runner runner(config, options);
  const ResponseFile file = read_response_file(existing, /*drop_torn_tail=*/true);
  const RunHeader expected = make_run_header(config);
  if (file.header.fingerprint != expected.fingerprint) {
    throw Error(ErrorCode::ConfigMismatch, existing.string() + " has fingerprint " +
                                               file.header.fingerprint + ", this config has " +
                                               expected.fingerprint);
  }
  ResponseWriter writer = ResponseWriter::append_to(existing);
  RunSummary summary = runner.run(writer, file.records);
  summary.output_path = existing;
  return summary;
}

}  // namespace divbench
