#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace proxitop {

/**
 * Base class for all toolkit errors. Every error carries a short stable
 * code (used by the CLI and structured reports) plus a human message.
 */
class ToolkitError : public std::runtime_error {
public:
  ToolkitError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define PROXITOP_ERROR(Name)                                        \
  class Name : public ToolkitError {                                \
  public:                                                           \
    explicit Name(const std::string& message)                       \
        : ToolkitError(#Name, message) {}                           \
  }

// Construction / input validation.
PROXITOP_ERROR(InvalidSpace);
PROXITOP_ERROR(InvalidSubset);
PROXITOP_ERROR(InvalidMap);
PROXITOP_ERROR(EmptySet);
PROXITOP_ERROR(MissingProbe);
PROXITOP_ERROR(ParseError);

// Map algebra.
PROXITOP_ERROR(CompositionMismatch);
PROXITOP_ERROR(NotACover);
PROXITOP_ERROR(NotClosed);
PROXITOP_ERROR(Disagreement);

// Homotopy verification.
PROXITOP_ERROR(EndpointMismatch);
PROXITOP_ERROR(RelViolation);
PROXITOP_ERROR(FrameMismatch);
PROXITOP_ERROR(NoRealization);

// Cycles and systems.
PROXITOP_ERROR(InvalidCycle);
PROXITOP_ERROR(Disconnected);
PROXITOP_ERROR(NoCommonVertex);
PROXITOP_ERROR(MultipleCommonVertices);

// Raster / curve analysis.
PROXITOP_ERROR(ResolutionTooCoarse);
PROXITOP_ERROR(RegionCountNotTwo);

// Frame sequences.
PROXITOP_ERROR(InvalidShape);
PROXITOP_ERROR(UnknownVertex);

#undef PROXITOP_ERROR

}  // namespace proxitop
