#include "divbench/perturbation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "divbench/error.hpp"

namespace divbench {

namespace {

constexpr int kMaxWords = 100;
constexpr int kMaxStringLength = 64;

void validate_list(const std::vector<std::string>& list, std::string_view name) {
  if (list.empty()) {
    throw Error(ErrorCode::InvalidWordLists, std::string(name) + " is empty");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& word : list) {
    if (word.empty()) {
      throw Error(ErrorCode::InvalidWordLists, std::string(name) + " contains an empty entry");
    }
    for (unsigned char c : word) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
          (c >= 'A' && c <= 'Z')) {
        throw Error(ErrorCode::InvalidWordLists,
                    std::string(name) + " entry '" + word + "' must be lowercase without whitespace");
      }
    }
    if (!seen.insert(word).second) {
      throw Error(ErrorCode::InvalidWordLists,
                  std::string(name) + " contains duplicate '" + word + "'");
    }
  }
}

const std::string& pick(const std::vector<std::string>& list, RandomSource& rng) {
  return list[rng.uniform_index(list.size())];
}

}  // namespace

void ContextSpec::validate() const {
  if (kind == ContextKind::words && (word_count < 1 || word_count > kMaxWords)) {
    throw Error(ErrorCode::InvalidContextSpec,
                "word count must be in [1, 100], got " + std::to_string(word_count));
  }
}

std::string ContextSpec::tag() const {
  switch (kind) {
    case ContextKind::none: return "regular";
    case ContextKind::words:
      return word_count == 1 ? "word" : "word-" + std::to_string(word_count);
    case ContextKind::sentence: return "sentence";
    case ContextKind::random_string: return "string";
  }
  return "regular";
}

ContextSpec ContextSpec::parse(std::string_view tag, int num_words) {
  ContextSpec spec;
  if (tag == "regular" || tag == "none") {
    spec = regular();
  } else if (tag == "word" || tag == "words") {
    spec = words(num_words);
  } else if (tag == "sentence") {
    spec = sentence();
  } else if (tag == "string") {
    spec = random_string();
  } else if (tag.starts_with("word-")) {
    const std::string_view digits = tag.substr(5);
    int n = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || end != digits.data() + digits.size()) {
      throw Error(ErrorCode::InvalidContextSpec, "bad word count in '" + std::string(tag) + "'");
    }
    spec = words(n);
  } else {
    throw Error(ErrorCode::InvalidContextSpec, "unknown condition '" + std::string(tag) + "'");
  }
  spec.validate();
  return spec;
}

void WordLists::validate() const {
  validate_list(adjectives, "adjectives");
  validate_list(nouns, "nouns");
  validate_list(verbs, "verbs");
}

WordLists load_word_lists(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::FileNotFound, "cannot open word lists '" + path.string() + "'");
  }
  WordLists lists;
  try {
    const auto doc = nlohmann::json::parse(in);
    lists.adjectives = doc.at("adjectives").get<std::vector<std::string>>();
    lists.nouns = doc.at("nouns").get<std::vector<std::string>>();
    lists.verbs = doc.at("verbs").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidWordLists, path.string() + ": " + e.what());
  }
  lists.validate();
  return lists;
}

std::string random_word(const WordLists& lists, RandomSource& rng) {
  switch (rng.uniform_index(3)) {
    case 0: return pick(lists.adjectives, rng);
    case 1: return pick(lists.nouns, rng);
    default: return pick(lists.verbs, rng);
  }
}

std::string random_sentence(const WordLists& lists, RandomSource& rng) {
  // Draw order is part of the determinism contract.
  const std::string& adjective = pick(lists.adjectives, rng);
  const std::string& subject = pick(lists.nouns, rng);
  const std::string& verb = pick(lists.verbs, rng);
  const std::string& object = pick(lists.nouns, rng);
  return "The " + adjective + " " + subject + " " + verb + "s " + object + ".";
}

std::string random_string(RandomSource& rng, int length) {
  if (length < 1 || length > kMaxStringLength) {
    throw Error(ErrorCode::InvalidLength,
                "random string length must be in [1, 64], got " + std::to_string(length));
  }
  std::string out(static_cast<std::size_t>(length), 'a');
  for (char& c : out) c = static_cast<char>('a' + rng.uniform_index(26));
  return out;
}

std::string make_context(const ContextSpec& spec, const WordLists& lists, RandomSource& rng) {
  spec.validate();
  switch (spec.kind) {
    case ContextKind::none: return {};
    case ContextKind::words: {
      std::string out;
      for (int i = 0; i < spec.word_count; ++i) {
        if (i > 0) out += ' ';
        out += random_word(lists, rng);
      }
      return out;
    }
    case ContextKind::sentence: return random_sentence(lists, rng);
    case ContextKind::random_string: {
      const auto length = static_cast<int>(random_word(lists, rng).size());
      return random_string(rng, std::clamp(length, 1, kMaxStringLength));
    }
  }
  return {};
}

InjectedPrompt inject(std::string_view context, std::string_view prompt_text) {
  if (prompt_text.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt text is empty");
  InjectedPrompt out{std::string(context), std::string(prompt_text), {}};
  out.full_text = context.empty() ? out.base_text : out.context_text + "\n" + out.base_text;
  return out;
}

}  // namespace divbench
