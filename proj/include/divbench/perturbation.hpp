#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "divbench/rng.hpp"

namespace divbench {

enum class ContextKind { none, words, sentence, random_string };

/// Which random context to prepend to a prompt.
struct ContextSpec {
  ContextKind kind = ContextKind::none;
  int word_count = 0;  // only meaningful for ContextKind::words

  static ContextSpec regular() { return {}; }
  static ContextSpec words(int count) { return {ContextKind::words, count}; }
  static ContextSpec sentence() { return {ContextKind::sentence, 0}; }
  static ContextSpec random_string() { return {ContextKind::random_string, 0}; }

  /// Throws InvalidContextSpec unless 1 <= word_count <= 100 for words.
  void validate() const;

  /// Canonical condition tag: "regular", "word" (one word), "word-<n>",
  /// "sentence" or "string".
  std::string tag() const;

  /// Inverse of tag(). A bare "word"/"words" takes `num_words` (CLI
  /// --num-words); "none" is accepted as an alias for "regular".
  static ContextSpec parse(std::string_view tag, int num_words = 1);

  friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

struct WordLists {
  std::vector<std::string> adjectives;
  std::vector<std::string> nouns;
  std::vector<std::string> verbs;  // base form, regular "+s" conjugation

  /// Throws InvalidWordLists on empty lists, duplicates, uppercase or
  /// whitespace in entries.
  void validate() const;
};

/// Embedded vocabulary (a few hundred entries per part of speech).
const WordLists& default_word_lists();

/// Reads {"adjectives":[...],"nouns":[...],"verbs":[...]} and validates it.
WordLists load_word_lists(const std::filesystem::path& path);

struct InjectedPrompt {
  std::string context_text;
  std::string base_text;
  std::string full_text;
};

/// Picks one of {adjectives, nouns, verbs} uniformly, then an entry uniformly.
std::string random_word(const WordLists& lists, RandomSource& rng);

/// "The {adjective} {noun} {verb}s {noun}."
std::string random_sentence(const WordLists& lists, RandomSource& rng);

/// `length` characters uniform over a-z. Throws InvalidLength outside [1, 64].
std::string random_string(RandomSource& rng, int length);

/// Context text for `spec`. A random_string context takes its length from a
/// random_word draw so string lengths follow the word-length distribution.
std::string make_context(const ContextSpec& spec, const WordLists& lists, RandomSource& rng);

/// Context on its own line above the prompt; no separator when the context
/// is empty. Throws EmptyPrompt on an empty prompt.
InjectedPrompt inject(std::string_view context, std::string_view prompt_text);

}  // namespace divbench
