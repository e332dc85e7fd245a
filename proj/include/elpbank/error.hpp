#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elpbank {

enum class Errc {
  dimension_mismatch,
  shape_mismatch,
  scheme_mismatch,
  singular_matrix,
  not_expanding,
  not_lowpass,
  non_vanishing_generator,
  verify_failed,
  muep_postcondition_failed,
  precondition_failed,
  sos_identity_failed,
  parse_error,
  invariant_violation,
  unknown_name,
  missing_parameter,
  overflow,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::scheme_mismatch: return "SchemeMismatch";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::not_expanding: return "NotExpanding";
    case Errc::not_lowpass: return "NotLowpass";
    case Errc::non_vanishing_generator: return "NonVanishingGenerator";
    case Errc::verify_failed: return "VerifyFailed";
    case Errc::muep_postcondition_failed: return "MuepPostconditionFailed";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::sos_identity_failed: return "SosIdentityFailed";
    case Errc::parse_error: return "ParseError";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::unknown_name: return "UnknownName";
    case Errc::missing_parameter: return "MissingParameter";
    case Errc::overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace elpbank
