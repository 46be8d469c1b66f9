#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gipmax {

enum class ErrorCode {
    InvalidArgument,
    MalformedLine,
    NonPositiveWeight,
    DuplicateEdge,
    SelfLoop,
    OddDegree,
    EmptyGraph,
    NonConvergent,
    DivergentSeries,
    HorizonExceeded,
    KTooLarge,
    CombinatorialBlowup,
    DegenerateOptimum,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers what went
/// wrong without string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// Validation-class errors map to exit code 2 in the CLI.
    bool is_validation() const noexcept {
        return code_ != ErrorCode::NonConvergent &&
               code_ != ErrorCode::DivergentSeries;
    }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

} // namespace gipmax
