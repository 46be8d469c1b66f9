#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gipmax/bounds.hpp"
#include "gipmax/graph.hpp"

namespace gipmax {

/// Dense per-node state x(t), all entries >= 0.
using StateVector = std::vector<double>;

struct PropagationConfig {
    double gamma = 0.0;
    double eps = 1e-10;
    std::size_t t_max = 10000;
    bool record_trajectory = false;

    void validate() const;
};

struct TrajectoryStep {
    std::size_t t = 0;
    std::vector<std::pair<NodeId, double>> entries; // nonzero x_j(t), ascending j
};

struct PropagationResult {
    /// sum_j sum_{t=1}^{steps} (1-gamma)^t x_j(t); equals the sum of per_node.
    double total = 0.0;
    std::vector<double> per_node;
    /// t at which ||(1-gamma)^t x(t)||_inf < eps first held, or t_max.
    std::size_t steps = 0;
    bool converged = false;
    /// s(t) = sum_j sum_{t'=0}^{t} (1-gamma)^t' x_j(t'), t = 0..steps.
    std::vector<double> s_of_t;
    /// n_a(t) = #nodes with positive cumulative influence up to t.
    std::vector<std::size_t> n_a_of_t;
    /// Only filled when PropagationConfig::record_trajectory is set.
    std::vector<TrajectoryStep> trajectory;
    std::vector<std::vector<NodeId>> active_history;
};

/// f_{j,t}(y) for the schedule's bound of node j at step t.
double bound_eval(const BoundSchedule& schedule, NodeId j, std::size_t t, double y);

/// Throws InvalidArgument unless x0 has n entries, each 0 or within the
/// schedule's t = 0 bounds.
void validate_initial_state(const BoundSchedule& schedule, std::span<const double> x0,
                            std::size_t n);

/// One GIP update: x_j(t) = f_{j,t}(sum_i W_ij x_i(t-1)). Only out-neighbours
/// of nodes active in x_prev are visited.
StateVector gip_step(const Graph& g, std::span<const double> x_prev,
                     const BoundSchedule& schedule, std::size_t t);

/// Runs the GIP dynamics from x0 until ||(1-gamma)^t x(t)||_inf < eps or t_max.
/// Hitting t_max returns a partial result with converged = false.
PropagationResult evaluate_influence(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg,
                                     std::span<const double> x0);

/// Dense states x(0), ..., x(horizon) with no convergence test and no
/// validation of x0.
std::vector<StateVector> simulate(const Graph& g, const BoundSchedule& schedule,
                                  std::span<const double> x0, std::size_t horizon);

/// c^T x0 with c the Katz centrality at factor (1 - gamma).
/// Throws DivergentSeries unless (1 - gamma) * rho(W) < 1.
double eic_closed_form(const Graph& g, double gamma, std::span<const double> x0,
                       double tol = 1e-13);

/// x_j(t) = theta_j if y_j(t) >= theta_j else 0.
StateVector elt_step(const Graph& g, std::span<const double> x_prev,
                     std::span<const double> thresholds);

/// Multi-valued linear threshold ramp parameters, one entry per node.
struct MltParams {
    std::vector<double> l_prime;
    std::vector<double> h_prime;
    std::vector<double> m;
    std::vector<double> h0_prime;

    void validate(std::size_t n) const;

    /// Parameters equivalent to uniform threshold-type bounds with l0 = 1:
    /// l' = theta_l*alpha, h' = theta_h*alpha*h0, m = theta_h*h0/theta_l, h'_0 = h0.
    static MltParams from_threshold(double theta_l, double theta_h, double alpha,
                                    std::span<const double> h0);
};

double mlt_eval(const MltParams& params, NodeId j, double y);

StateVector mlt_step(const Graph& g, std::span<const double> x_prev,
                     const MltParams& params);

/// MLT counterpart of evaluate_influence; x0 entries must be 0 or in [1, h'_0].
PropagationResult evaluate_mlt(const Graph& g, const MltParams& params,
                               const PropagationConfig& cfg, std::span<const double> x0);

struct EicViolation {
    enum class Kind { LowerAboveFloor, FloorAboveReach, ReachAboveUpper };
    NodeId node;
    std::size_t t;
    Kind kind;
};

/// Checks l_{j,t} <= l_min0 w^t <= (h0^T W^t)_j <= h_{j,t} for 1 <= t <= horizon.
/// An empty result certifies that the dynamics are linear over the horizon.
std::vector<EicViolation> validate_eic_limit(const Graph& g, const BoundSchedule& schedule,
                                             std::span<const double> x0,
                                             std::size_t horizon);

/// Right derivative of s_t(x0) = sum_j (1-gamma)^t x_j(t) with respect to x0,
/// by backpropagation through the per-step 0/1 slopes of the bound functions.
/// Throws HorizonExceeded if t exceeds cfg.t_max.
std::vector<double> right_derivative(const Graph& g, const BoundSchedule& schedule,
                                     const PropagationConfig& cfg,
                                     std::span<const double> x0, std::size_t t);

} // namespace gipmax
