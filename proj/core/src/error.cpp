#include "gipmax/error.hpp"

namespace gipmax {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::DegenerateOptimum: return "DegenerateOptimum";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

} // namespace gipmax
