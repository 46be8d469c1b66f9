#include "gipmax/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stack>

#include "gipmax/error.hpp"

namespace gipmax {

Graph Graph::from_edges(std::size_t n, std::span<const WeightedEdge> edges,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n)
        fail(ErrorCode::InvalidArgument, "label count does not match node count");

    Graph g;
    g.out_adj_.resize(n);
    g.in_adj_.resize(n);
    g.labels_ = std::move(labels);
    for (const auto& e : edges) {
        if (e.src >= n || e.dst >= n)
            fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
        if (e.src == e.dst)
            fail(ErrorCode::SelfLoop, "self-edge on node " + std::to_string(e.src));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            fail(ErrorCode::NonPositiveWeight, "weight must be positive and finite");
        g.out_adj_[e.src].push_back({e.dst, e.weight});
        g.in_adj_[e.dst].push_back({e.src, e.weight});
    }
    auto by_node = [](const Arc& a, const Arc& b) { return a.node < b.node; };
    for (std::size_t i = 0; i < n; ++i) {
        auto& out = g.out_adj_[i];
        std::sort(out.begin(), out.end(), by_node);
        auto dup = std::adjacent_find(out.begin(), out.end(),
                                      [](const Arc& a, const Arc& b) { return a.node == b.node; });
        if (dup != out.end())
            fail(ErrorCode::DuplicateEdge,
                 "edge " + std::to_string(i) + " -> " + std::to_string(dup->node));
        std::sort(g.in_adj_[i].begin(), g.in_adj_[i].end(), by_node);
    }
    g.edge_count_ = edges.size();
    return g;
}

double Graph::weight(NodeId i, NodeId j) const {
    const auto& out = out_adj_[i];
    auto it = std::lower_bound(out.begin(), out.end(), j,
                               [](const Arc& a, NodeId v) { return a.node < v; });
    return (it != out.end() && it->node == j) ? it->weight : 0.0;
}

std::vector<WeightedEdge> Graph::edges() const {
    std::vector<WeightedEdge> result;
    result.reserve(edge_count_);
    for (NodeId i = 0; i < out_adj_.size(); ++i)
        for (const auto& a : out_adj_[i]) result.push_back({i, a.node, a.weight});
    return result;
}

std::string Graph::label(NodeId i) const {
    return labels_.empty() ? std::to_string(i) : labels_[i];
}

double mean_weight(const Graph& g) {
    if (g.edge_count() == 0) fail(ErrorCode::EmptyGraph, "mean weight of a graph without edges");
    // Offsets from the minimum: exact for uniform weights, where summing
    // |E| copies of e.g. 0.1 would drift by an ulp and shift every threshold.
    const double base = min_weight(g);
    double offset = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (const auto& a : g.out_arcs(i)) offset += a.weight - base;
    return base + offset / static_cast<double>(g.edge_count());
}

double min_weight(const Graph& g) {
    if (g.edge_count() == 0) fail(ErrorCode::EmptyGraph, "min weight of a graph without edges");
    double w = std::numeric_limits<double>::infinity();
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (const auto& a : g.out_arcs(i)) w = std::min(w, a.weight);
    return w;
}

std::vector<std::uint32_t> strongly_connected_components(const Graph& g, std::size_t& count) {
    // Iterative Tarjan.
    const std::size_t n = g.node_count();
    constexpr std::uint32_t unvisited = UINT32_MAX;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<char> on_stack(n, 0);
    std::vector<NodeId> stack;
    std::vector<std::pair<NodeId, std::size_t>> call; // (node, next arc)
    std::uint32_t next_index = 0;
    count = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, arc] = call.back();
            if (arc == 0 && index[v] == unvisited) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            auto out = g.out_arcs(v);
            if (arc < out.size()) {
                NodeId w = out[arc++].node;
                if (index[w] == unvisited) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = static_cast<std::uint32_t>(count);
                } while (w != v);
                ++count;
            }
            NodeId finished = v;
            call.pop_back();
            if (!call.empty()) {
                NodeId parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return comp;
}

double spectral_radius(const Graph& g, double tol, std::size_t max_iter) {
    const std::size_t n = g.node_count();
    if (n == 0) fail(ErrorCode::InvalidArgument, "spectral radius of an empty graph");

    std::size_t count = 0;
    auto comp = strongly_connected_components(g, count);
    std::vector<std::vector<NodeId>> members(count);
    for (NodeId v = 0; v < n; ++v) members[comp[v]].push_back(v);

    std::vector<double> x(n, 0.0), y(n, 0.0);
    double rho = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
        const auto& nodes = members[c];
        if (nodes.size() == 1) continue; // no self-loops: a trivial component has radius 0

        // W_C + I is primitive for an irreducible W_C, and every eigenvalue
        // lambda of W_C maps to |lambda + 1| <= rho + 1, so the Perron root
        // dominates strictly. Collatz-Wielandt bounds bracket rho + 1.
        for (NodeId v : nodes) x[v] = 1.0;
        bool done = false;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            double norm = 0.0;
            for (NodeId v : nodes) {
                double s = x[v];
                for (const auto& a : g.out_arcs(v))
                    if (comp[a.node] == c) s += a.weight * x[a.node];
                y[v] = s;
                lo = std::min(lo, s / x[v]);
                hi = std::max(hi, s / x[v]);
                norm = std::max(norm, s);
            }
            for (NodeId v : nodes) x[v] = y[v] / norm;
            if (hi - lo <= tol * std::max(1.0, hi)) {
                rho = std::max(rho, 0.5 * (lo + hi) - 1.0);
                done = true;
                break;
            }
        }
        if (!done) fail(ErrorCode::NonConvergent, "power iteration did not settle");
        for (NodeId v : nodes) x[v] = 0.0;
    }
    return rho;
}

bool is_weakly_connected(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> todo{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
        NodeId v = todo.back();
        todo.pop_back();
        for (auto arcs : {g.out_arcs(v), g.in_arcs(v)})
            for (const auto& a : arcs)
                if (!seen[a.node]) {
                    seen[a.node] = 1;
                    ++reached;
                    todo.push_back(a.node);
                }
    }
    return reached == n;
}

} // namespace gipmax
