#include "hk/error.hpp"

namespace hk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::IllDefined: return "ILL_DEFINED";
    case ErrorCode::NonZeroComposite: return "NONZERO_COMPOSITE";
    case ErrorCode::Category: return "CATEGORY";
    case ErrorCode::Functoriality: return "FUNCTORIALITY";
    case ErrorCode::ConditionSub: return "CONDITION_SUB";
    case ErrorCode::DanglingReference: return "DANGLING_REFERENCE";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Version: return "VERSION";
    case ErrorCode::WrongKind: return "WRONG_KIND";
    case ErrorCode::Io: return "IO";
    case ErrorCode::CrossCheck: return "CROSS_CHECK";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
  }
  return "UNKNOWN";
}

}  // namespace hk
