#include "growth/error.hpp"

namespace growth {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonMonotonicTime: return "NonMonotonicTime";
    case Errc::NonPositiveValue: return "NonPositiveValue";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::DegenerateWindow: return "DegenerateWindow";
    case Errc::ZeroTransformedValue: return "ZeroTransformedValue";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::Overflow: return "Overflow";
    case Errc::NonPositiveAnchor: return "NonPositiveAnchor";
    case Errc::UnreachableAnchor: return "UnreachableAnchor";
    case Errc::UnnormalizedModel: return "UnnormalizedModel";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateX: return "DegenerateX";
    case Errc::ZeroRate: return "ZeroRate";
    case Errc::NonPositiveRate: return "NonPositiveRate";
    case Errc::InvalidWindow: return "InvalidWindow";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::NonIncreasingGrid: return "NonIncreasingGrid";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::NonPositiveStart: return "NonPositiveStart";
    case Errc::SingularIntegrand: return "SingularIntegrand";
    case Errc::ZeroDelta: return "ZeroDelta";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateYear: return "DuplicateYear";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::Unwritable: return "Unwritable";
    case Errc::InvalidRecord: return "InvalidRecord";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, std::string_view module, const std::string& detail,
                    std::optional<std::size_t> index) {
  std::string msg;
  msg.append(module).append(": ").append(errc_name(code));
  if (index) msg.append(" at index ").append(std::to_string(*index));
  if (!detail.empty()) msg.append(": ").append(detail);
  return msg;
}

}  // namespace

GrowthError::GrowthError(Errc code, std::string_view module, const std::string& detail,
                         std::optional<std::size_t> index)
    : std::runtime_error(compose(code, module, detail, index)),
      code_(code),
      module_(module),
      index_(index) {}

}  // namespace growth
