#include "deskcat/error.hpp"

namespace deskcat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::IdentityLawViolation: return "IdentityLawViolation";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadComposite: return "BadComposite";
    case ErrorCode::OracleInconsistent: return "OracleInconsistent";
    case ErrorCode::InvalidFunctor: return "InvalidFunctor";
    case ErrorCode::InvalidNaturalTransformation: return "InvalidNaturalTransformation";
    case ErrorCode::InvalidPresheaf: return "InvalidPresheaf";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::InvalidSquare: return "InvalidSquare";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SearchExceeded: return "SearchExceeded";
    case ErrorCode::BadStage: return "BadStage";
    case ErrorCode::UniquenessFailure: return "UniquenessFailure";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

BadStageError::BadStageError(std::size_t stage, const std::string& detail)
    : Error(ErrorCode::BadStage, "stage " + std::to_string(stage) + ": " + detail),
      stage_(stage) {}

}  // namespace deskcat
