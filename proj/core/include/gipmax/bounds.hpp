#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "gipmax/graph.hpp"

namespace gipmax {

/// Lower/upper clipping bounds of one node at one step. An empty `upper`
/// means unbounded (no saturation); it never enters arithmetic.
struct Bound {
    double lower = 0.0;
    std::optional<double> upper;

    bool contains(double v) const { return v >= lower && (!upper || v <= *upper); }
};

/// Relative slack in threshold comparisons. Bounds come from powers while y
/// is a sum of products, so an exact tie (common with uniform weights) can
/// land an ulp on either side; within this fraction y counts as reaching it.
inline constexpr double kTieTolerance = 1e-12;

inline bool reaches(double y, double bound) {
    return y >= bound - kTieTolerance * std::abs(bound);
}

/// Piecewise bound function: 0 below `lower`, identity on [lower, upper),
/// `upper` at and above `upper`.
inline double clip(const Bound& b, double y) {
    if (!reaches(y, b.lower)) return 0.0;
    if (b.upper && reaches(y, *b.upper)) return *b.upper;
    return y;
}

/// A per-node parameter that is either one shared value or a full vector.
class NodeParam {
  public:
    NodeParam(double uniform = 0.0) : uniform_(uniform) {}
    NodeParam(std::vector<double> values) : values_(std::move(values)) {}

    double operator[](NodeId j) const { return values_.empty() ? uniform_ : values_[j]; }
    bool is_uniform() const noexcept { return values_.empty(); }
    double uniform_value() const noexcept { return uniform_; }
    /// Throws InvalidArgument unless uniform or sized exactly n.
    void check_size(std::size_t n, const char* name) const;

  private:
    double uniform_ = 0.0;
    std::vector<double> values_;
};

/// l_{j,t} = (theta_l * alpha)^t * l0,  h_{j,t} = theta_h * theta_l^(t-1) * alpha^t * h0
/// for t >= 1, and (l0, h0) at t = 0.
struct ThresholdBounds {
    NodeParam theta_l{1.0};
    NodeParam theta_h{1.0};
    double alpha = 0.1;
    NodeParam l0{1.0};
    NodeParam h0{1.0};
};

/// l = 0, h = unbounded for t >= 1: plain linear dynamics.
struct EicLimitBounds {};

/// Arbitrary (j, t) -> Bound rule.
struct ExplicitBounds {
    std::function<Bound(NodeId, std::size_t)> rule;
};

class BoundSchedule {
  public:
    enum class Kind { Threshold, EicLimit, Explicit };

    BoundSchedule() : spec_(EicLimitBounds{}) {}

    static BoundSchedule threshold(ThresholdBounds b);
    /// Uniform thresholds with scalar l0/h0.
    static BoundSchedule threshold(double theta_l, double theta_h, double alpha,
                                   double l0 = 1.0, double h0 = 1.0);
    static BoundSchedule eic_limit() { return BoundSchedule(EicLimitBounds{}); }
    static BoundSchedule explicit_rule(std::function<Bound(NodeId, std::size_t)> rule);
    /// rows[t][j]; steps past the last row reuse the last row.
    static BoundSchedule explicit_table(std::vector<std::vector<Bound>> rows);

    Kind kind() const noexcept { return static_cast<Kind>(spec_.index()); }
    bool is_eic_limit() const noexcept { return kind() == Kind::EicLimit; }
    const ThresholdBounds* threshold_params() const { return std::get_if<ThresholdBounds>(&spec_); }

    /// Bounds of node j at step t.
    Bound at(NodeId j, std::size_t t) const;

    /// All bounds of one step, with per-step powers hoisted out of the
    /// per-node query.
    class Step {
      public:
        Bound operator()(NodeId j) const;

      private:
        friend class BoundSchedule;
        const BoundSchedule* owner_ = nullptr;
        std::size_t t_ = 0;
        bool fast_ = false;
        double lower_factor_ = 0.0;
        double upper_factor_ = 0.0;
    };
    Step step(std::size_t t) const;

    /// Throws InvalidArgument when parameters are out of range for n nodes
    /// (negative thresholds, alpha <= 0, l0 <= 0, h0 < l0, theta_h*h0 < theta_l*l0).
    void validate(std::size_t n) const;

  private:
    using Spec = std::variant<ThresholdBounds, EicLimitBounds, ExplicitBounds>;
    explicit BoundSchedule(Spec spec) : spec_(std::move(spec)) {}
    Spec spec_;
};

} // namespace gipmax
