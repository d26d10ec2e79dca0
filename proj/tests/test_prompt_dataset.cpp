#include <gtest/gtest.h>

#include <algorithm>

#include "divbench/error.hpp"
#include "divbench/model_backend.hpp"
#include "divbench/prompt_dataset.hpp"
#include "test_support.hpp"

namespace divbench {
namespace {

using testing::TempDir;
using testing::write_file;

PromptRecord valid_record(std::string id = "q1") {
  return {std::move(id), "Name 10 popular Hollywood actors.", "Name 10 Hollywood actors.", 10,
          "film"};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::EmptyRun;
}

TEST(ValidatePrompt, ValidRecordHasEmptyReport) {
  EXPECT_TRUE(validate_prompt(valid_record()).empty());
}

TEST(ValidatePrompt, EmptyOrderedTextNamesField) {
  auto record = valid_record();
  record.ordered_text.clear();
  const auto report = validate_prompt(record);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_NE(report[0].find("ordered_text"), std::string::npos);
}

TEST(ValidatePrompt, CountMismatchReported) {
  auto record = valid_record();
  record.unordered_text = "Name 5 Hollywood actors.";
  const auto report = validate_prompt(record);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_NE(report[0].find("k = 10"), std::string::npos);
}

TEST(ValidatePrompt, CountMustBeStandaloneNumber) {
  PromptRecord record{"q", "Name 1 popular thing.", "Name 10 things.", 1, std::nullopt};
  EXPECT_EQ(validate_prompt(record).size(), 1u);
}

TEST(ValidatePrompt, ReportsEveryViolation) {
  PromptRecord record{"", "", "", 0, std::nullopt};
  EXPECT_EQ(validate_prompt(record).size(), 4u);
}

TEST(LoadPrompts, ReadsRecordsInFileOrder) {
  TempDir dir;
  write_file(dir / "p.jsonl",
             R"({"id":"b","ordered_text":"Name 10 popular X.","unordered_text":"Name 10 X.","k":10,"topic":null})"
             "\n"
             R"({"id":"a","ordered_text":"Name 3 top Y.","unordered_text":"Name 3 Y.","k":3,"topic":"t"})"
             "\n");
  const auto records = load_prompts(dir / "p.jsonl");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].id, "b");
  EXPECT_FALSE(records[0].topic.has_value());
  EXPECT_EQ(records[1].k, 3);
  EXPECT_EQ(records[1].topic, "t");
}

TEST(LoadPrompts, DuplicateIdRejected) {
  TempDir dir;
  save_prompts({valid_record("q1"), valid_record("q1")}, dir / "p.jsonl");
  try {
    load_prompts(dir / "p.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
    EXPECT_NE(std::string(e.what()).find("q1"), std::string::npos);
  }
}

TEST(LoadPrompts, MissingFile) {
  EXPECT_EQ(code_of([] { load_prompts("/nonexistent/prompts.jsonl"); }), ErrorCode::FileNotFound);
}

TEST(LoadPrompts, MalformedRecordCarriesLineNumber) {
  TempDir dir;
  save_prompts({valid_record("q1")}, dir / "p.jsonl");
  std::ofstream(dir / "p.jsonl", std::ios::app) << "{\"id\":\"q2\"}\n";
  try {
    load_prompts(dir / "p.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRecord);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
}

TEST(LoadPrompts, RejectsExtraKeysBadTypesAndInvalidRecords) {
  TempDir dir;
  const std::string bad[] = {
      R"({"id":"a","ordered_text":"Name 10 X.","unordered_text":"Name 10 X.","k":10,"topic":null,"x":1})",
      R"({"id":"a","ordered_text":"Name 10 X.","unordered_text":"Name 10 X.","k":"10","topic":null})",
      R"({"id":"a","ordered_text":"Name 10 X.","unordered_text":"Name 10 X.","k":10,"topic":5})",
      R"({"id":"a","ordered_text":"Name 10 X.","unordered_text":"Name 9 X.","k":10,"topic":null})",
      R"({"id":"a","ordered_text":"Name 0 X.","unordered_text":"Name 0 X.","k":0,"topic":null})",
      R"(not json)",
      R"([1,2])",
  };
  for (const auto& line : bad) {
    write_file(dir / "p.jsonl", line + "\n");
    EXPECT_EQ(code_of([&] { load_prompts(dir / "p.jsonl"); }), ErrorCode::MalformedRecord) << line;
  }
}

TEST(LoadPrompts, SaveRoundTripIsFieldForField) {
  TempDir dir;
  std::vector<PromptRecord> records{
      valid_record("q1"),
      {"q2", "Name 3 best-known \"quoted\" plays.", "Name 3 plays.", 3, std::nullopt},
      {"q3", "Name 12 größte Städte.", "Name 12 Städte.", 12, "ünïcode"},
  };
  save_prompts(records, dir / "p.jsonl");
  const auto loaded = load_prompts(dir / "p.jsonl");
  EXPECT_EQ(loaded, records);
  EXPECT_EQ(load_prompts(dir / "p.jsonl"), loaded);
}

TEST(BundledDataset, HundredValidRecordsWithReferencePairs) {
  const auto records = load_prompts(std::string(DIVBENCH_DATA) + "/prompts.jsonl");
  ASSERT_EQ(records.size(), 100u);
  for (const auto& r : records) {
    EXPECT_TRUE(validate_prompt(r).empty()) << r.id;
    EXPECT_EQ(r.k, 10);
  }
  const auto shakespeare = std::find_if(records.begin(), records.end(), [](const auto& r) {
    return r.unordered_text == "Name 10 Shakespeare plays.";
  });
  ASSERT_NE(shakespeare, records.end());
  EXPECT_EQ(shakespeare->ordered_text, "Name 10 best-known Shakespeare plays.");
}

class CannedBackend final : public Backend {
 public:
  explicit CannedBackend(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const InjectedPrompt& prompt, int k, RandomSource&) override {
    last_prompt = prompt.full_text;
    last_k = k;
    return reply_;
  }
  std::string last_prompt;
  int last_k = 0;

 private:
  std::string reply_;
};

TEST(DraftPrompts, MockCandidatesAreValid) {
  MockBackend mock(MockConfig{});
  const auto candidates = draft_prompts(mock, 5, {});
  EXPECT_LE(candidates.size(), 5u);
  EXPECT_FALSE(candidates.empty());
  for (const auto& c : candidates) EXPECT_TRUE(validate_prompt(c).empty()) << c.id;
}

TEST(DraftPrompts, IdenticalQuestionsCollapse) {
  CannedBackend backend(R"(["Shakespeare plays", "shakespeare   plays", "Olympic sports"])");
  const auto candidates = draft_prompts(backend, 3, {"sports", "literature"});
  ASSERT_EQ(candidates.size(), 2u);
  EXPECT_EQ(candidates[0].unordered_text, "Name 10 Shakespeare plays.");
  EXPECT_EQ(candidates[0].ordered_text, "Name 10 popular Shakespeare plays.");
  EXPECT_EQ(candidates[1].unordered_text, "Name 10 Olympic sports.");
  EXPECT_EQ(backend.last_k, 3);
  EXPECT_NE(backend.last_prompt.find("sports, literature"), std::string::npos);
}

TEST(DraftPrompts, ZeroRequestedIsEmpty) {
  CannedBackend backend("[]");
  EXPECT_TRUE(draft_prompts(backend, 0, {}).empty());
  EXPECT_EQ(backend.last_k, 0);
}

TEST(DraftPrompts, UnparsableReplyYieldsNoCandidates) {
  CannedBackend backend("no list today");
  EXPECT_TRUE(draft_prompts(backend, 4, {}).empty());
}

TEST(DraftPrompts, BackendErrorsPropagate) {
  ModelConfig config;
  config.backend = BackendKind::mock;
  MockBackend tiny(MockConfig{3, 1.1, true});
  EXPECT_EQ(code_of([&] { draft_prompts(tiny, 5, {}); }), ErrorCode::MockMisconfigured);
}

TEST(SyntheticPrompts, AreValidAndUnique) {
  const auto records = synthetic_prompts(100);
  ASSERT_EQ(records.size(), 100u);
  EXPECT_EQ(records.front().id, "syn-001");
  for (const auto& r : records) EXPECT_TRUE(validate_prompt(r).empty());
}

}  // namespace
}  // namespace divbench
