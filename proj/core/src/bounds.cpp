#include "gipmax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "gipmax/error.hpp"

namespace gipmax {

void NodeParam::check_size(std::size_t n, const char* name) const {
    if (!values_.empty() && values_.size() != n)
        fail(ErrorCode::InvalidArgument, std::string(name) + " has " +
                                             std::to_string(values_.size()) + " entries, expected " +
                                             std::to_string(n));
}

BoundSchedule BoundSchedule::threshold(ThresholdBounds b) { return BoundSchedule(std::move(b)); }

BoundSchedule BoundSchedule::threshold(double theta_l, double theta_h, double alpha, double l0,
                                       double h0) {
    return BoundSchedule(ThresholdBounds{theta_l, theta_h, alpha, l0, h0});
}

BoundSchedule BoundSchedule::explicit_rule(std::function<Bound(NodeId, std::size_t)> rule) {
    if (!rule) fail(ErrorCode::InvalidArgument, "empty bound rule");
    return BoundSchedule(ExplicitBounds{std::move(rule)});
}

BoundSchedule BoundSchedule::explicit_table(std::vector<std::vector<Bound>> rows) {
    if (rows.empty()) fail(ErrorCode::InvalidArgument, "empty bound table");
    auto table = std::make_shared<const std::vector<std::vector<Bound>>>(std::move(rows));
    return explicit_rule([table](NodeId j, std::size_t t) {
        const auto& row = (*table)[std::min(t, table->size() - 1)];
        if (j >= row.size()) fail(ErrorCode::InvalidArgument, "bound table row too short");
        return row[j];
    });
}

namespace {

double lower_factor(double theta_l, double alpha, std::size_t t) {
    return std::pow(theta_l * alpha, static_cast<double>(t));
}

double upper_factor(double theta_l, double theta_h, double alpha, std::size_t t) {
    return theta_h * std::pow(theta_l, static_cast<double>(t - 1)) *
           std::pow(alpha, static_cast<double>(t));
}

} // namespace

Bound BoundSchedule::at(NodeId j, std::size_t t) const {
    switch (kind()) {
    case Kind::EicLimit:
        return Bound{0.0, std::nullopt};
    case Kind::Explicit:
        return std::get<ExplicitBounds>(spec_).rule(j, t);
    case Kind::Threshold:
        break;
    }
    const auto& b = std::get<ThresholdBounds>(spec_);
    if (t == 0) return Bound{b.l0[j], b.h0[j]};
    return Bound{lower_factor(b.theta_l[j], b.alpha, t) * b.l0[j],
                 upper_factor(b.theta_l[j], b.theta_h[j], b.alpha, t) * b.h0[j]};
}

BoundSchedule::Step BoundSchedule::step(std::size_t t) const {
    Step s;
    s.owner_ = this;
    s.t_ = t;
    if (const auto* b = threshold_params();
        b && t > 0 && b->theta_l.is_uniform() && b->theta_h.is_uniform()) {
        s.fast_ = true;
        s.lower_factor_ = lower_factor(b->theta_l.uniform_value(), b->alpha, t);
        s.upper_factor_ =
            upper_factor(b->theta_l.uniform_value(), b->theta_h.uniform_value(), b->alpha, t);
    }
    return s;
}

Bound BoundSchedule::Step::operator()(NodeId j) const {
    if (!fast_) return owner_->at(j, t_);
    const auto& b = std::get<ThresholdBounds>(owner_->spec_);
    return Bound{lower_factor_ * b.l0[j], upper_factor_ * b.h0[j]};
}

void BoundSchedule::validate(std::size_t n) const {
    const auto* b = threshold_params();
    if (!b) return;
    b->theta_l.check_size(n, "theta_l");
    b->theta_h.check_size(n, "theta_h");
    b->l0.check_size(n, "l0");
    b->h0.check_size(n, "h0");
    if (!(b->alpha > 0.0) || !std::isfinite(b->alpha))
        fail(ErrorCode::InvalidArgument, "alpha must be positive");
    for (NodeId j = 0; j < n; ++j) {
        auto reject = [j](const char* what) {
            fail(ErrorCode::InvalidArgument, std::string(what) + " at node " + std::to_string(j));
        };
        if (!(b->theta_l[j] >= 0.0)) reject("theta_l negative");
        if (!(b->theta_h[j] >= 0.0)) reject("theta_h negative");
        if (!(b->l0[j] > 0.0)) reject("l0 must be positive");
        if (b->h0[j] < b->l0[j]) reject("h0 below l0");
        if (b->theta_h[j] * b->h0[j] < b->theta_l[j] * b->l0[j]) reject("theta_h*h0 below theta_l*l0");
    }
}

} // namespace gipmax
