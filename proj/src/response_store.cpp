#include "divbench/response_store.hpp"

#include <set>
#include <sstream>

#include "divbench/error.hpp"

namespace divbench {

namespace {

using nlohmann::json;

std::string dump_line(const json& doc) {
  return doc.dump(-1, ' ', false, json::error_handler_t::replace);
}

Error storage_error(const std::filesystem::path& path, const std::string& what) {
  return Error(ErrorCode::StorageError, path.string() + ": " + what);
}

// Byte length of the content up to and including the last newline.
std::uintmax_t complete_prefix_length(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto last_newline = bytes.rfind('\n');
  return last_newline == std::string::npos ? 0 : last_newline + 1;
}

}  // namespace

json to_json(const ResponseRecord& r) {
  return json{{"prompt_id", r.prompt_id},
              {"setting", to_string(r.setting)},
              {"condition", r.condition},
              {"rep_index", r.rep_index},
              {"k", r.k},
              {"context_text", r.context_text},
              {"full_prompt_text", r.full_prompt_text},
              {"raw_text", r.raw_text},
              {"items", r.items},
              {"parse_status", to_string(r.parse_status)},
              {"error", r.error},
              {"model_name", r.model_name},
              {"timestamp", r.timestamp},
              {"seed_fingerprint", r.seed_fingerprint}};
}

ResponseRecord response_record_from_json(const json& doc) {
  ResponseRecord r;
  r.prompt_id = doc.at("prompt_id").get<std::string>();
  r.setting = setting_from_string(doc.at("setting").get<std::string>());
  r.condition = doc.at("condition").get<std::string>();
  r.rep_index = doc.at("rep_index").get<int>();
  r.k = doc.at("k").get<int>();
  r.context_text = doc.at("context_text").get<std::string>();
  r.full_prompt_text = doc.at("full_prompt_text").get<std::string>();
  r.raw_text = doc.at("raw_text").get<std::string>();
  r.items = doc.at("items").get<std::vector<std::string>>();
  r.parse_status = parse_status_from_string(doc.at("parse_status").get<std::string>());
  r.error = doc.value("error", std::string{});
  r.model_name = doc.at("model_name").get<std::string>();
  r.timestamp = doc.at("timestamp").get<std::string>();
  r.seed_fingerprint = doc.at("seed_fingerprint").get<std::string>();
  return r;
}

ResponseFile read_response_file(const std::filesystem::path& path, bool drop_torn_tail) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw storage_error(path, "cannot open response file");
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  std::vector<std::string> lines;
  std::size_t start = 0;
  bool torn = false;
  while (start < content.size()) {
    const auto end = content.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(content.substr(start));
      torn = true;
      break;
    }
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) throw storage_error(path, "empty response file");

  ResponseFile file;
  try {
    const json header = json::parse(lines.front());
    file.header.fingerprint = header.at("fingerprint").get<std::string>();
    file.header.config = header.at("config");
  } catch (const json::exception& e) {
    throw storage_error(path, std::string("bad header line: ") + e.what());
  }

  std::set<CellKey> keys;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const bool last = i + 1 == lines.size();
    ResponseRecord record;
    try {
      if (torn && last) throw std::runtime_error("unterminated final line");
      record = response_record_from_json(json::parse(lines[i]));
    } catch (const std::exception& e) {
      if (drop_torn_tail && last) break;
      throw storage_error(path, "line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!keys.insert(cell_key(record)).second) {
      throw storage_error(path, "duplicate cell at line " + std::to_string(i + 1));
    }
    file.records.push_back(std::move(record));
  }
  return file;
}

ResponseWriter::ResponseWriter(std::filesystem::path path, std::ofstream out)
    : path_(std::move(path)), out_(std::move(out)) {}

ResponseWriter ResponseWriter::create(const std::filesystem::path& path, const RunHeader& header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw storage_error(path, "cannot create response file");
  out << dump_line(json{{"fingerprint", header.fingerprint}, {"config", header.config}}) << '\n';
  out.flush();
  if (!out) throw storage_error(path, "header write failed");
  return ResponseWriter(path, std::move(out));
}

ResponseWriter ResponseWriter::append_to(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw storage_error(path, "cannot stat response file: " + ec.message());
  const auto keep = complete_prefix_length(path);
  if (keep != size) {
    std::filesystem::resize_file(path, keep, ec);
    if (ec) throw storage_error(path, "cannot drop torn final line: " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw storage_error(path, "cannot open response file for append");
  return ResponseWriter(path, std::move(out));
}

void ResponseWriter::append(const ResponseRecord& record) {
  out_ << dump_line(to_json(record)) << '\n';
  out_.flush();
  if (!out_) throw storage_error(path_, "append failed");
}

}  // namespace divbench
