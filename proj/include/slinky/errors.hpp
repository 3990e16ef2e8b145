#pragma once

#include <stdexcept>
#include <string>

namespace slinky {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable tag used by the CLI when reporting structured errors.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define SLINKY_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

SLINKY_DEFINE_ERROR(InvalidParams)
SLINKY_DEFINE_ERROR(DimensionOverflow)
SLINKY_DEFINE_ERROR(NotNormalized)
SLINKY_DEFINE_ERROR(InvalidMu)
SLINKY_DEFINE_ERROR(BandTouching)
SLINKY_DEFINE_ERROR(SolverFailure)
SLINKY_DEFINE_ERROR(NoEdgeStates)
SLINKY_DEFINE_ERROR(LeakyRestriction)
SLINKY_DEFINE_ERROR(NormDriftExceeded)
SLINKY_DEFINE_ERROR(NoOscillation)

#undef SLINKY_DEFINE_ERROR

}  // namespace slinky
