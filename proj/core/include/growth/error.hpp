#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace growth {

/// Error categories raised by the library. Each maps to one failure mode of
/// an operation; callers switch on the code, humans read the message.
enum class Errc {
  // series
  LengthMismatch,
  NonMonotonicTime,
  NonPositiveValue,
  // rates
  SeriesTooShort,
  DegenerateWindow,
  ZeroTransformedValue,
  InvalidConfig,
  // models
  InvalidModel,
  OutsideDomain,
  Overflow,
  NonPositiveAnchor,
  UnreachableAnchor,
  UnnormalizedModel,
  // fitting
  TooFewPoints,
  DegenerateX,
  ZeroRate,
  NonPositiveRate,
  InvalidWindow,
  // forecast
  EmptyGrid,
  NonIncreasingGrid,
  // oracle
  DomainViolation,
  NonPositiveStart,
  SingularIntegrand,
  ZeroDelta,
  // cli
  FileNotFound,
  ParseError,
  DuplicateYear,
  TooFewRows,
  UnknownCommand,
  Unwritable,
  InvalidRecord,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception carrying an error code, the module that raised it and, where
/// meaningful, the offending element index (or row number for CSV input).
class GrowthError : public std::runtime_error {
 public:
  GrowthError(Errc code, std::string_view module, const std::string& detail,
              std::optional<std::size_t> index = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::string_view module() const noexcept { return module_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::string_view module_;
  std::optional<std::size_t> index_;
};

}  // namespace growth
