#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace divbench {

class Backend;

/// One list-generation question in both phrasings.
struct PromptRecord {
  std::string id;
  std::string ordered_text;    // with a ranking qualifier, e.g. "popular"
  std::string unordered_text;  // without it
  int k = 10;
  std::optional<std::string> topic;

  friend bool operator==(const PromptRecord&, const PromptRecord&) = default;
};

enum class Setting { ordered, unordered };

std::string_view to_string(Setting setting) noexcept;
Setting setting_from_string(std::string_view text);

/// Question text for the selected phrasing.
const std::string& prompt_text(const PromptRecord& record, Setting setting);

/// Every violated record invariant, one human-readable line each.
/// Empty iff the record is valid. Never throws.
std::vector<std::string> validate_prompt(const PromptRecord& record);

/// Reads a JSONL prompts file. All-or-nothing: throws FileNotFound,
/// MalformedRecord (with the 1-based line number) or DuplicateId.
std::vector<PromptRecord> load_prompts(const std::filesystem::path& path);

/// Writes records in the same format load_prompts reads.
void write_prompts(const std::vector<PromptRecord>& records, std::ostream& out);
void save_prompts(const std::vector<PromptRecord>& records, const std::filesystem::path& path);

/// FNV-1a over the file bytes; part of the run fingerprint.
std::uint64_t dataset_content_hash(const std::filesystem::path& path);

/// Asks the backend for `n` list categories and turns each into a candidate
/// record ("Name k <category>." / "Name k popular <category>."). Exact
/// duplicates of the unordered text (case and whitespace insensitive) are
/// dropped, as are candidates failing validate_prompt. Candidates are meant
/// for manual review, not direct use.
std::vector<PromptRecord> draft_prompts(Backend& backend, int n,
                                        const std::vector<std::string>& topic_hints,
                                        int k = 10, std::uint64_t seed = 0);

/// `n` placeholder prompts ("Name k things in synthetic category 001.") for
/// mock experiments where the question wording does not matter.
std::vector<PromptRecord> synthetic_prompts(int n, int k = 10);

}  // namespace divbench
