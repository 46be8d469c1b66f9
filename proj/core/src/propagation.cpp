#include "gipmax/propagation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "evaluate.hpp"
#include "frontier.hpp"
#include "gipmax/centrality.hpp"
#include "gipmax/error.hpp"

namespace gipmax {
namespace {

struct GipRule {
    const BoundSchedule& schedule;
    BoundSchedule::Step step{};

    void begin(std::size_t t) { step = schedule.step(t); }
    double operator()(NodeId j, double y) const { return clip(step(j), y); }
};

struct MltRule {
    const MltParams& params;

    void begin(std::size_t) {}
    double operator()(NodeId j, double y) const { return mlt_eval(params, j, y); }
};

void check_state_size(std::span<const double> x, std::size_t n, const char* what) {
    if (x.size() != n)
        fail(ErrorCode::InvalidArgument, std::string(what) + " has " + std::to_string(x.size()) +
                                             " entries, expected " + std::to_string(n));
}

void check_nonnegative(std::span<const double> x) {
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] >= 0.0) || !std::isfinite(x[j]))
            fail(ErrorCode::InvalidArgument,
                 "state of node " + std::to_string(j) + " must be finite and nonnegative");
}

} // namespace

void PropagationConfig::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) fail(ErrorCode::InvalidArgument, "gamma must lie in [0, 1)");
    if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
    if (t_max < 1) fail(ErrorCode::InvalidArgument, "t_max must be at least 1");
}

double bound_eval(const BoundSchedule& schedule, NodeId j, std::size_t t, double y) {
    return clip(schedule.at(j, t), y);
}

void validate_initial_state(const BoundSchedule& schedule, std::span<const double> x0,
                            std::size_t n) {
    check_state_size(x0, n, "initial state");
    check_nonnegative(x0);
    for (NodeId j = 0; j < n; ++j)
        if (x0[j] != 0.0 && !schedule.at(j, 0).contains(x0[j]))
            fail(ErrorCode::InvalidArgument, "initial state of node " + std::to_string(j) +
                                                 " lies outside its t = 0 bounds");
}

StateVector gip_step(const Graph& g, std::span<const double> x_prev,
                     const BoundSchedule& schedule, std::size_t t) {
    const std::size_t n = g.node_count();
    check_state_size(x_prev, n, "state");
    detail::Frontier cur(n), next(n);
    for (NodeId j = 0; j < n; ++j)
        if (x_prev[j] != 0.0) {
            cur.x[j] = x_prev[j];
            cur.active.push_back(j);
        }
    std::vector<char> mark(n, 0);
    std::vector<NodeId> candidates;
    GipRule rule{schedule};
    rule.begin(t);
    detail::advance(g, cur, next, rule, mark, candidates);
    return std::move(next.x);
}

PropagationResult evaluate_influence(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg,
                                     std::span<const double> x0) {
    cfg.validate();
    schedule.validate(g.node_count());
    validate_initial_state(schedule, x0, g.node_count());
    return detail::evaluate_unchecked(g, schedule, cfg, x0);
}

namespace detail {
PropagationResult evaluate_unchecked(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg, std::span<const double> x0) {
    return run(g, cfg, x0, GipRule{schedule});
}
} // namespace detail

std::vector<StateVector> simulate(const Graph& g, const BoundSchedule& schedule,
                                  std::span<const double> x0, std::size_t horizon) {
    std::vector<StateVector> states;
    states.reserve(horizon + 1);
    states.emplace_back(x0.begin(), x0.end());
    for (std::size_t t = 1; t <= horizon; ++t) states.push_back(gip_step(g, states.back(), schedule, t));
    return states;
}

double eic_closed_form(const Graph& g, double gamma, std::span<const double> x0, double tol) {
    if (!(gamma >= 0.0 && gamma < 1.0)) fail(ErrorCode::InvalidArgument, "gamma must lie in [0, 1)");
    check_state_size(x0, g.node_count(), "initial state");
    const auto c = katz_centrality(g, 1.0 - gamma, tol);
    double s = 0.0;
    for (std::size_t j = 0; j < x0.size(); ++j) s += c.values[j] * x0[j];
    return s;
}

StateVector elt_step(const Graph& g, std::span<const double> x_prev,
                     std::span<const double> thresholds) {
    const std::size_t n = g.node_count();
    check_state_size(x_prev, n, "state");
    check_state_size(thresholds, n, "thresholds");
    StateVector x(n, 0.0);
    for (NodeId j = 0; j < n; ++j) {
        const double y = detail::pull(g, x_prev, j);
        if (reaches(y, thresholds[j])) x[j] = thresholds[j];
    }
    return x;
}

void MltParams::validate(std::size_t n) const {
    if (l_prime.size() != n || h_prime.size() != n || m.size() != n || h0_prime.size() != n)
        fail(ErrorCode::InvalidArgument, "MLT parameter vectors must have one entry per node");
    for (NodeId j = 0; j < n; ++j) {
        auto reject = [j](const char* what) {
            fail(ErrorCode::InvalidArgument, std::string(what) + " at node " + std::to_string(j));
        };
        if (!(l_prime[j] > 0.0)) reject("l' must be positive");
        if (!(h_prime[j] >= l_prime[j])) reject("h' below l'");
        if (!(m[j] >= 1.0)) reject("m below 1");
        if (!(h0_prime[j] >= 1.0)) reject("h'_0 below 1");
    }
}

MltParams MltParams::from_threshold(double theta_l, double theta_h, double alpha,
                                    std::span<const double> h0) {
    if (!(theta_l > 0.0)) fail(ErrorCode::InvalidArgument, "theta_l must be positive");
    MltParams p;
    const std::size_t n = h0.size();
    p.l_prime.assign(n, theta_l * alpha);
    p.h_prime.resize(n);
    p.m.resize(n);
    p.h0_prime.assign(h0.begin(), h0.end());
    for (std::size_t j = 0; j < n; ++j) {
        p.h_prime[j] = theta_h * alpha * h0[j];
        p.m[j] = theta_h * h0[j] / theta_l;
    }
    return p;
}

double mlt_eval(const MltParams& p, NodeId j, double y) {
    if (!reaches(y, p.l_prime[j])) return 0.0;
    if (reaches(y, p.h_prime[j])) return p.m[j];
    return (p.m[j] - 1.0) / (p.h_prime[j] - p.l_prime[j]) * (y - p.l_prime[j]) + 1.0;
}

StateVector mlt_step(const Graph& g, std::span<const double> x_prev, const MltParams& params) {
    const std::size_t n = g.node_count();
    check_state_size(x_prev, n, "state");
    StateVector x(n, 0.0);
    for (NodeId j = 0; j < n; ++j) x[j] = mlt_eval(params, j, detail::pull(g, x_prev, j));
    return x;
}

PropagationResult evaluate_mlt(const Graph& g, const MltParams& params,
                               const PropagationConfig& cfg, std::span<const double> x0) {
    cfg.validate();
    params.validate(g.node_count());
    check_state_size(x0, g.node_count(), "initial state");
    check_nonnegative(x0);
    for (NodeId j = 0; j < x0.size(); ++j)
        if (x0[j] != 0.0 && (x0[j] < 1.0 || x0[j] > params.h0_prime[j]))
            fail(ErrorCode::InvalidArgument,
                 "initial state of node " + std::to_string(j) + " must be 0 or in [1, h'_0]");
    return detail::run(g, cfg, x0, MltRule{params});
}

std::vector<EicViolation> validate_eic_limit(const Graph& g, const BoundSchedule& schedule,
                                             std::span<const double> x0,
                                             std::size_t horizon) {
    if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be at least 1");
    const std::size_t n = g.node_count();
    validate_initial_state(schedule, x0, n);
    std::vector<EicViolation> out;
    if (schedule.is_eic_limit() || g.edge_count() == 0) return out;

    double l_min0 = std::numeric_limits<double>::infinity();
    std::vector<double> reach(n);
    for (NodeId j = 0; j < n; ++j) {
        const Bound b0 = schedule.at(j, 0);
        l_min0 = std::min(l_min0, b0.lower);
        reach[j] = b0.upper.value_or(x0[j]);
    }
    const double w = min_weight(g);

    double floor = l_min0;
    std::vector<double> next(n);
    for (std::size_t t = 1; t <= horizon; ++t) {
        floor *= w;
        for (NodeId j = 0; j < n; ++j) next[j] = detail::pull(g, reach, j);
        reach.swap(next);
        for (NodeId j = 0; j < n; ++j) {
            // No walk of length t ends at j: y_j(t) = 0 whatever the bounds.
            if (reach[j] == 0.0) continue;
            const Bound b = schedule.at(j, t);
            if (b.lower > floor) out.push_back({j, t, EicViolation::Kind::LowerAboveFloor});
            if (floor > reach[j]) out.push_back({j, t, EicViolation::Kind::FloorAboveReach});
            if (b.upper && reach[j] > *b.upper)
                out.push_back({j, t, EicViolation::Kind::ReachAboveUpper});
        }
    }
    return out;
}

std::vector<double> right_derivative(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg,
                                     std::span<const double> x0, std::size_t t) {
    cfg.validate();
    const std::size_t n = g.node_count();
    check_state_size(x0, n, "initial state");
    check_nonnegative(x0);
    if (t > cfg.t_max)
        fail(ErrorCode::HorizonExceeded,
             "horizon " + std::to_string(t) + " exceeds t_max " + std::to_string(cfg.t_max));
    if (t == 0) return std::vector<double>(n, 1.0);

    // Forward pass: slope d_r[j] = 1 iff l_{j,r} <= y_j(r) < h_{j,r}.
    std::vector<std::vector<char>> slope(t + 1, std::vector<char>(n, 0));
    StateVector x(x0.begin(), x0.end()), y(n);
    for (std::size_t r = 1; r <= t; ++r) {
        const auto step = schedule.step(r);
        for (NodeId j = 0; j < n; ++j) y[j] = detail::pull(g, x, j);
        for (NodeId j = 0; j < n; ++j) {
            const Bound b = step(j);
            slope[r][j] = reaches(y[j], b.lower) && !(b.upper && reaches(y[j], *b.upper));
            x[j] = clip(b, y[j]);
        }
    }

    // Backward pass: u = W d_1 W d_2 ... W d_t 1.
    std::vector<double> u(n), wu(n);
    for (NodeId j = 0; j < n; ++j) u[j] = slope[t][j] ? 1.0 : 0.0;
    for (std::size_t r = t; r >= 1; --r) {
        for (NodeId i = 0; i < n; ++i) {
            double s = 0.0;
            for (const auto& a : g.out_arcs(i)) s += a.weight * u[a.node];
            wu[i] = s;
        }
        u.swap(wu);
        if (r > 1)
            for (NodeId j = 0; j < n; ++j)
                if (!slope[r - 1][j]) u[j] = 0.0;
    }
    const double scale = std::pow(1.0 - cfg.gamma, static_cast<double>(t));
    for (double& v : u) v *= scale;
    return u;
}

} // namespace gipmax
