#pragma once

#include <span>

#include "gipmax/propagation.hpp"

namespace gipmax::detail {

/// evaluate_influence without argument checks, for callers that have
/// validated the problem once and evaluate it many times.
PropagationResult evaluate_unchecked(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg, std::span<const double> x0);

} // namespace gipmax::detail
