#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "divbench/list_parser.hpp"
#include "divbench/prompt_dataset.hpp"

namespace divbench {

/// One model reply for one (prompt, setting, condition, repetition) cell.
struct ResponseRecord {
  std::string prompt_id;
  Setting setting = Setting::unordered;
  std::string condition;  // ContextSpec::tag()
  int rep_index = 0;
  int k = 0;
  std::string context_text;
  std::string full_prompt_text;
  std::string raw_text;
  std::vector<std::string> items;  // normalized; empty on failure
  ParseStatus parse_status = ParseStatus::failed;
  std::string error;  // failure reason, empty on success
  std::string model_name;
  std::string timestamp;
  std::string seed_fingerprint;

  bool succeeded() const noexcept { return parse_status != ParseStatus::failed; }

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

using CellKey = std::tuple<std::string, Setting, std::string, int>;

inline CellKey cell_key(const ResponseRecord& r) {
  return {r.prompt_id, r.setting, r.condition, r.rep_index};
}

nlohmann::json to_json(const ResponseRecord& record);
ResponseRecord response_record_from_json(const nlohmann::json& doc);

struct RunHeader {
  std::string fingerprint;
  nlohmann::json config;
};

struct ResponseFile {
  RunHeader header;
  std::vector<ResponseRecord> records;
};

/// Reads a response file. Throws StorageError on a missing file, a bad
/// header, a malformed record or a duplicate cell key. With
/// `drop_torn_tail`, an unterminated or unparsable final line (an
/// interrupted append) is ignored instead of rejected.
ResponseFile read_response_file(const std::filesystem::path& path, bool drop_torn_tail = false);

/// Single-writer JSONL appender. Every line is flushed before append returns.
class ResponseWriter {
 public:
  /// Creates a new file containing only the header line.
  static ResponseWriter create(const std::filesystem::path& path, const RunHeader& header);

  /// Opens an existing file for append, first cutting off a torn final line.
  static ResponseWriter append_to(const std::filesystem::path& path);

  void append(const ResponseRecord& record);

 private:
  ResponseWriter(std::filesystem::path path, std::ofstream out);

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace divbench
