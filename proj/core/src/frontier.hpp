#pragma once

// Sparse-frontier iteration shared by the GIP and MLT evaluators.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "gipmax/graph.hpp"
#include "gipmax/propagation.hpp"

namespace gipmax::detail {

/// Dense state buffer plus the sorted list of its nonzero entries.
struct Frontier {
    std::vector<double> x;
    std::vector<NodeId> active;

    explicit Frontier(std::size_t n) : x(n, 0.0) {}

    void clear() {
        for (NodeId j : active) x[j] = 0.0;
        active.clear();
    }
};

/// Nodes that can become nonzero at the next step: out-neighbours of the
/// active set, ascending. `mark` must be all zero and is left all zero.
inline void collect_candidates(const Graph& g, std::span<const NodeId> active,
                               std::vector<char>& mark, std::vector<NodeId>& out) {
    out.clear();
    for (NodeId i : active)
        for (const auto& a : g.out_arcs(i))
            if (!mark[a.node]) {
                mark[a.node] = 1;
                out.push_back(a.node);
            }
    for (NodeId j : out) mark[j] = 0;
    std::sort(out.begin(), out.end());
}

/// y_j = sum_i W_ij x_i, summed over sources in ascending order so that the
/// result is bitwise identical to a dense row-by-row reference.
inline double pull(const Graph& g, std::span<const double> x, NodeId j) {
    double y = 0.0;
    for (const auto& a : g.in_arcs(j)) y += a.weight * x[a.node];
    return y;
}

/// One step: next = rule(j, y_j) over the candidates of cur.
template <class Rule>
void advance(const Graph& g, const Frontier& cur, Frontier& next, Rule& rule,
             std::vector<char>& mark, std::vector<NodeId>& candidates) {
    next.clear();
    collect_candidates(g, cur.active, mark, candidates);
    for (NodeId j : candidates) {
        const double v = rule(j, pull(g, cur.x, j));
        if (v != 0.0) {
            next.x[j] = v;
            next.active.push_back(j);
        }
    }
}

/// Algorithm-1 style evaluation. `rule.begin(t)` is called before step t,
/// then `rule(j, y)` gives x_j(t).
template <class Rule>
PropagationResult run(const Graph& g, const PropagationConfig& cfg, std::span<const double> x0,
                      Rule rule) {
    const std::size_t n = g.node_count();
    PropagationResult r;
    r.per_node.assign(n, 0.0);

    Frontier cur(n), next(n);
    for (NodeId j = 0; j < n; ++j)
        if (x0[j] != 0.0) {
            cur.x[j] = x0[j];
            cur.active.push_back(j);
        }
    std::vector<char> mark(n, 0), ever(n, 0);
    std::vector<NodeId> candidates;

    double s = 0.0;
    double norm = 0.0;
    std::size_t reached = 0;
    for (NodeId j : cur.active) {
        s += cur.x[j];
        norm = std::max(norm, cur.x[j]);
        ever[j] = 1;
        ++reached;
    }
    r.s_of_t.push_back(s);
    r.n_a_of_t.push_back(reached);
    auto record = [&](std::size_t t) {
        if (!cfg.record_trajectory) return;
        TrajectoryStep step{t, {}};
        step.entries.reserve(cur.active.size());
        for (NodeId j : cur.active) step.entries.emplace_back(j, cur.x[j]);
        r.trajectory.push_back(std::move(step));
        r.active_history.push_back(cur.active);
    };
    record(0);

    const double keep = 1.0 - cfg.gamma;
    double discount = 1.0;
    std::size_t t = 0;
    r.converged = norm < cfg.eps;
    while (!r.converged && t < cfg.t_max) {
        ++t;
        discount *= keep;
        rule.begin(t);
        advance(g, cur, next, rule, mark, candidates);
        std::swap(cur, next);

        norm = 0.0;
        for (NodeId j : cur.active) {
            const double v = discount * cur.x[j];
            r.per_node[j] += v;
            s += v;
            norm = std::max(norm, v);
            if (!ever[j]) {
                ever[j] = 1;
                ++reached;
            }
        }
        r.s_of_t.push_back(s);
        r.n_a_of_t.push_back(reached);
        record(t);
        r.converged = norm < cfg.eps;
    }
    r.steps = t;
    for (double v : r.per_node) r.total += v;
    return r;
}

} // namespace gipmax::detail
