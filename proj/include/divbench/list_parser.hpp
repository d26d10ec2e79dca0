#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "divbench/error.hpp"

namespace divbench {

enum class ParseStatus { ok, recovered, failed };

std::string_view to_string(ParseStatus status) noexcept;
ParseStatus parse_status_from_string(std::string_view text);

/// Parse failure with the taxonomy's payload: `found`/`expected` for
/// WrongItemCount, `index` for NonStringItem and EmptyItem.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int found = -1, int expected = -1,
             int index = -1)
      : Error(code, message), found_(found), expected_(expected), index_(index) {}

  int found() const noexcept { return found_; }
  int expected() const noexcept { return expected_; }
  int index() const noexcept { return index_; }

 private:
  int found_;
  int expected_;
  int index_;
};

struct ParsedList {
  std::vector<std::string> items;  // verbatim strings from the array
  ParseStatus status = ParseStatus::ok;
};

/// Extracts a JSON array of exactly k strings. The whole reply being the
/// array yields `ok`; an array found inside a code fence or surrounding prose
/// yields `recovered` (the first well-formed array wins). Throws ParseError.
ParsedList parse_list(std::string_view raw_text, int k);

/// NFC, lowercase, trim, collapse internal whitespace to one space, strip
/// trailing periods. Idempotent.
std::string normalize_item(std::string_view text);

}  // namespace divbench
