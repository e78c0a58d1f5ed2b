#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deskcat {

/// Named failure kinds. The CLI prints the name verbatim, so keep them stable.
enum class ErrorCode {
  MissingComposite,
  NonAssociative,
  IdentityLawViolation,
  DuplicateName,
  UnknownName,
  BadComposite,
  OracleInconsistent,
  InvalidFunctor,
  InvalidNaturalTransformation,
  InvalidPresheaf,
  InvalidMap,
  InvalidSquare,
  WindowTooSmall,
  SearchExceeded,
  BadStage,
  UniquenessFailure,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Raised by certificate verification; `stage()` is the first failing stage
/// (equal to the stage count when only the final composite is wrong).
class BadStageError : public Error {
 public:
  BadStageError(std::size_t stage, const std::string& detail);
  std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t stage_;
};

}  // namespace deskcat
