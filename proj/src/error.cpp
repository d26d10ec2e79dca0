#include "divbench/error.hpp"

namespace divbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidContextSpec: return "InvalidContextSpec";
    case ErrorCode::InvalidWordLists: return "InvalidWordLists";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::EmptyPrompt: return "EmptyPrompt";
    case ErrorCode::InvalidModelConfig: return "InvalidModelConfig";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::AuthFailure: return "AuthFailure";
    case ErrorCode::MockMisconfigured: return "MockMisconfigured";
    case ErrorCode::NotAList: return "NotAList";
    case ErrorCode::WrongItemCount: return "WrongItemCount";
    case ErrorCode::NonStringItem: return "NonStringItem";
    case ErrorCode::EmptyItem: return "EmptyItem";
    case ErrorCode::DatasetError: return "DatasetError";
    case ErrorCode::StorageError: return "StorageError";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewPairs: return "TooFewPairs";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::InvalidDf: return "InvalidDf";
    case ErrorCode::EmptyRun: return "EmptyRun";
    case ErrorCode::ConditionMissing: return "ConditionMissing";
  }
  return "Unknown";
}

}  // namespace divbench
