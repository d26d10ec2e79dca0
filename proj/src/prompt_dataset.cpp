#include "divbench/prompt_dataset.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "divbench/error.hpp"
#include "divbench/model_backend.hpp"
#include "divbench/rng.hpp"

namespace divbench {

namespace {

using nlohmann::json;

// Whether `text` contains the decimal rendering of k as a standalone number
// (so k=1 does not match "10").
bool mentions_count(const std::string& text, int k) {
  const std::string digits = std::to_string(k);
  for (auto pos = text.find(digits); pos != std::string::npos;
       pos = text.find(digits, pos + 1)) {
    const bool left_ok = pos == 0 || !std::isdigit(static_cast<unsigned char>(text[pos - 1]));
    const std::size_t after = pos + digits.size();
    const bool right_ok =
        after == text.size() || !std::isdigit(static_cast<unsigned char>(text[after]));
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::string collapse_whitespace(const std::string& text, bool lowercase) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
  }
  return out;
}

std::string dedup_key(const std::string& text) { return collapse_whitespace(text, true); }

PromptRecord record_from_json(const json& doc) {
  static const std::unordered_set<std::string> kKeys{"id", "ordered_text", "unordered_text", "k",
                                                     "topic"};
  if (!doc.is_object()) throw std::invalid_argument("record is not a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) throw std::invalid_argument("unexpected key '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!doc.contains(key)) throw std::invalid_argument("missing key '" + key + "'");
  }
  if (!doc["id"].is_string() || !doc["ordered_text"].is_string() ||
      !doc["unordered_text"].is_string()) {
    throw std::invalid_argument("id, ordered_text and unordered_text must be strings");
  }
  if (!doc["k"].is_number_integer()) throw std::invalid_argument("k must be an integer");
  if (!doc["topic"].is_null() && !doc["topic"].is_string()) {
    throw std::invalid_argument("topic must be a string or null");
  }
  PromptRecord record;
  record.id = doc["id"].get<std::string>();
  record.ordered_text = doc["ordered_text"].get<std::string>();
  record.unordered_text = doc["unordered_text"].get<std::string>();
  const auto k = doc["k"].get<std::int64_t>();
  if (k < 1 || k > 1'000'000) throw std::invalid_argument("k out of range");
  record.k = static_cast<int>(k);
  if (doc["topic"].is_string()) record.topic = doc["topic"].get<std::string>();
  return record;
}

}  // namespace

std::string_view to_string(Setting setting) noexcept {
  return setting == Setting::ordered ? "ordered" : "unordered";
}

Setting setting_from_string(std::string_view text) {
  if (text == "ordered") return Setting::ordered;
  if (text == "unordered") return Setting::unordered;
  throw Error(ErrorCode::DatasetError, "unknown setting '" + std::string(text) + "'");
}

const std::string& prompt_text(const PromptRecord& record, Setting setting) {
  return setting == Setting::ordered ? record.ordered_text : record.unordered_text;
}

std::vector<std::string> validate_prompt(const PromptRecord& record) {
  std::vector<std::string> violations;
  if (record.id.empty()) violations.emplace_back("id is empty");
  if (record.k < 1) violations.push_back("k must be >= 1, got " + std::to_string(record.k));
  const auto check_text = [&](const std::string& text, const char* field) {
    if (text.empty()) {
      violations.push_back(std::string(field) + " is empty");
    } else if (record.k >= 1 && !mentions_count(text, record.k)) {
      violations.push_back(std::string(field) + " does not mention k = " +
                           std::to_string(record.k));
    }
  };
  check_text(record.ordered_text, "ordered_text");
  check_text(record.unordered_text, "unordered_text");
  return violations;
}

std::vector<PromptRecord> load_prompts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open prompts file '" + path.string() + "'");

  std::vector<PromptRecord> records;
  std::unordered_set<std::string> ids;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const auto malformed = [&](const std::string& reason) {
      return Error(ErrorCode::MalformedRecord,
                   path.string() + ":" + std::to_string(line_no) + ": " + reason);
    };
    PromptRecord record;
    try {
      record = record_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw malformed(e.what());
    } catch (const std::invalid_argument& e) {
      throw malformed(e.what());
    }
    if (const auto violations = validate_prompt(record); !violations.empty()) {
      throw malformed(violations.front());
    }
    if (!ids.insert(record.id).second) {
      throw Error(ErrorCode::DuplicateId, record.id);
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_prompts(const std::vector<PromptRecord>& records, std::ostream& out) {
  for (const auto& record : records) {
    json doc = {{"id", record.id},
                {"ordered_text", record.ordered_text},
                {"unordered_text", record.unordered_text},
                {"k", record.k},
                {"topic", record.topic ? json(*record.topic) : json(nullptr)}};
    out << doc.dump() << '\n';
  }
}

void save_prompts(const std::vector<PromptRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::StorageError, "cannot write '" + path.string() + "'");
  write_prompts(records, out);
  if (!out) throw Error(ErrorCode::StorageError, "write failed for '" + path.string() + "'");
}

std::uint64_t dataset_content_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return fnv1a64(bytes);
}

std::vector<PromptRecord> draft_prompts(Backend& backend, int n,
                                        const std::vector<std::string>& topic_hints, int k,
                                        std::uint64_t seed) {
  if (n <= 0) return {};

  std::string request = "List " + std::to_string(n) +
                        " distinct categories of things that have many well-known members, "
                        "each as a short plural noun phrase (for example \"Shakespeare plays\" "
                        "or \"Olympic sports\").";
  if (!topic_hints.empty()) {
    request += " Draw on these topics:";
    for (std::size_t i = 0; i < topic_hints.size(); ++i) {
      request += (i == 0 ? " " : ", ") + topic_hints[i];
    }
    request += ".";
  }
  RngStream rng(derive_seed(seed, {"draft_prompts"}));
  const GenerationResult reply = query(backend, InjectedPrompt{{}, request, request}, n, rng);
  if (reply.parse_status == ParseStatus::failed) return {};

  std::vector<PromptRecord> candidates;
  std::unordered_set<std::string> seen;
  for (const std::string& raw : reply.items) {
    std::string category = collapse_whitespace(raw, false);
    while (!category.empty() && category.back() == '.') category.pop_back();
    if (category.empty()) continue;

    PromptRecord record;
    record.k = k;
    record.unordered_text = "Name " + std::to_string(k) + " " + category + ".";
    record.ordered_text = "Name " + std::to_string(k) + " popular " + category + ".";
    if (!seen.insert(dedup_key(record.unordered_text)).second) continue;
    char id[32];
    std::snprintf(id, sizeof(id), "draft-%03zu", candidates.size() + 1);
    record.id = id;
    if (!validate_prompt(record).empty()) continue;
    candidates.push_back(std::move(record));
  }
  return candidates;
}

std::vector<PromptRecord> synthetic_prompts(int n, int k) {
  std::vector<PromptRecord> records;
  records.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) {
    char id[32];
    char category[64];
    std::snprintf(id, sizeof(id), "syn-%03d", i);
    std::snprintf(category, sizeof(category), "things in synthetic category %03d", i);
    const std::string count = std::to_string(k);
    records.push_back(PromptRecord{id, "Name " + count + " popular " + category + ".",
                                   "Name " + count + " " + category + ".", k, "synthetic"});
  }
  return records;
}

}  // namespace divbench
