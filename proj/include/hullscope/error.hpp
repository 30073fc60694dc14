#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hullscope {

enum class ErrorCode {
  // validation failures (CLI exit code 2)
  infeasible_knots,
  degenerate_axes,
  parse_error,
  overlap_error,
  disconnected_union,
  too_large,
  not_simple,
  axis_too_far,
  // numerical failures (CLI exit code 3)
  zero_gradient,
  no_convergence,
  no_bracket,
  degenerate_minors,
  tangential_contact,
  degenerate_input,
  give_up,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::infeasible_knots: return "infeasible-knots";
    case ErrorCode::degenerate_axes: return "degenerate-axes";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::overlap_error: return "overlap-error";
    case ErrorCode::disconnected_union: return "disconnected-union";
    case ErrorCode::too_large: return "too-large";
    case ErrorCode::not_simple: return "not-simple";
    case ErrorCode::axis_too_far: return "axis-too-far";
    case ErrorCode::zero_gradient: return "zero-gradient";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::no_bracket: return "no-bracket";
    case ErrorCode::degenerate_minors: return "degenerate-minors";
    case ErrorCode::tangential_contact: return "tangential-contact";
    case ErrorCode::degenerate_input: return "degenerate-input";
    case ErrorCode::give_up: return "give-up";
  }
  return "unknown";
}

/// True for errors caused by bad input rather than by a solver failing.
inline bool is_validation_error(ErrorCode code) {
  return code <= ErrorCode::axis_too_far;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace hullscope
