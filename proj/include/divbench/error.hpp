#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divbench {

enum class ErrorCode {
  // prompt_dataset
  FileNotFound,
  MalformedRecord,
  DuplicateId,
  // perturbation
  InvalidContextSpec,
  InvalidWordLists,
  InvalidLength,
  EmptyPrompt,
  // model_backend
  InvalidModelConfig,
  BackendUnavailable,
  Timeout,
  AuthFailure,
  MockMisconfigured,
  NotAList,
  WrongItemCount,
  NonStringItem,
  EmptyItem,
  // run_orchestrator
  DatasetError,
  StorageError,
  ConfigMismatch,
  // statistics
  EmptyInput,
  LengthMismatch,
  TooFewPairs,
  DegenerateVariance,
  InvalidDf,
  // reporting
  EmptyRun,
  ConditionMissing,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. Every module throws this type
/// (or a subclass) so callers can dispatch on code() without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divbench
