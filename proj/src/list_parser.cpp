#include "divbench/list_parser.hpp"

#include <optional>

#include <json.hpp>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

namespace divbench {

namespace {

using nlohmann::json;

bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim_ascii(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

// End (exclusive) of the bracketed span opening at `open`, honoring JSON
// string literals. nullopt when the brackets never balance.
std::optional<std::size_t> matching_bracket(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      ++depth;
    } else if (c == ']' || c == '}') {
      if (--depth == 0) return i + 1;
      if (depth < 0) return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<json> parse_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return std::nullopt;
  return doc;
}

// First well-formed JSON array embedded anywhere in the text.
std::optional<json> find_embedded_array(std::string_view text) {
  for (std::size_t pos = text.find('['); pos != std::string_view::npos;
       pos = text.find('[', pos + 1)) {
    const auto end = matching_bracket(text, pos);
    if (!end) continue;
    if (auto doc = parse_json(text.substr(pos, *end - pos)); doc && doc->is_array()) {
      return doc;
    }
  }
  return std::nullopt;
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *instance;
}

icu::UnicodeString to_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  return U_FAILURE(status) ? s : out;
}

}  // namespace

std::string_view to_string(ParseStatus status) noexcept {
  switch (status) {
    case ParseStatus::ok: return "ok";
    case ParseStatus::recovered: return "recovered";
    case ParseStatus::failed: return "failed";
  }
  return "failed";
}

ParseStatus parse_status_from_string(std::string_view text) {
  if (text == "ok") return ParseStatus::ok;
  if (text == "recovered") return ParseStatus::recovered;
  if (text == "failed") return ParseStatus::failed;
  throw Error(ErrorCode::StorageError, "unknown parse status '" + std::string(text) + "'");
}

ParsedList parse_list(std::string_view raw_text, int k) {
  ParsedList out;
  std::optional<json> doc = parse_json(trim_ascii(raw_text));
  if (doc && doc->is_array()) {
    out.status = ParseStatus::ok;
  } else {
    doc = find_embedded_array(raw_text);
    if (!doc) throw ParseError(ErrorCode::NotAList, "no JSON array of strings in reply");
    out.status = ParseStatus::recovered;
  }

  const auto found = static_cast<int>(doc->size());
  if (found != k) {
    throw ParseError(ErrorCode::WrongItemCount,
                     "expected " + std::to_string(k) + " items, found " + std::to_string(found),
                     found, k);
  }
  out.items.reserve(doc->size());
  for (int i = 0; i < found; ++i) {
    const json& item = (*doc)[static_cast<std::size_t>(i)];
    if (!item.is_string()) {
      throw ParseError(ErrorCode::NonStringItem, "item " + std::to_string(i) + " is not a string",
                       -1, -1, i);
    }
    auto text = item.get<std::string>();
    if (normalize_item(text).empty()) {
      throw ParseError(ErrorCode::EmptyItem, "item " + std::to_string(i) + " is empty", -1, -1, i);
    }
    out.items.push_back(std::move(text));
  }
  return out;
}

std::string normalize_item(std::string_view text) {
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString lowered = to_nfc(source);
  lowered.toLower(icu::Locale::getRoot());
  const icu::UnicodeString folded = to_nfc(lowered);

  // Trim and collapse whitespace runs while walking code points.
  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < folded.length();) {
    const UChar32 cp = folded.char32At(i);
    i += U16_LENGTH(cp);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(u' '));
    pending_space = false;
    collapsed.append(cp);
  }

  // "cat . ." -> "cat": periods and the spaces they expose go together.
  int32_t end = collapsed.length();
  while (end > 0 && (collapsed[end - 1] == u'.' || collapsed[end - 1] == u' ')) --end;
  collapsed.truncate(end);

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

}  // namespace divbench
