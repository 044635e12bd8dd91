#pragma once

#include <stdexcept>
#include <string>

namespace specgame {

enum class ErrorCode {
    structural,           // dimension mismatch, invalid argument
    config,               // malformed scenario document
    no_usable_spectrum,   // water-filling with all gains zero
    oracle_scale_exceeded,
    degenerate,           // no interior mixed equilibrium
    no_pure_nash_reached,
    ensemble_unstable,
    empty_window,
    internal,
};

const char* to_string(ErrorCode code);

/// Error raised by every library operation. The code decides how the CLI
/// maps the failure onto an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for failures caused by bad input rather than numerics.
    bool is_validation() const noexcept {
        return code_ == ErrorCode::structural || code_ == ErrorCode::config ||
               code_ == ErrorCode::oracle_scale_exceeded ||
               code_ == ErrorCode::empty_window;
    }

  private:
    ErrorCode code_;
};

inline void require(bool condition, const std::string& message,
                    ErrorCode code = ErrorCode::structural) {
    if (!condition) throw Error(code, message);
}

}  // namespace specgame
