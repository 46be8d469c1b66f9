#include "gipmax/centrality.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gipmax/error.hpp"

namespace gipmax {

CentralityVector katz_centrality(const Graph& g, double factor, double tol,
                                 std::size_t max_iter) {
    if (!(factor > 0.0)) fail(ErrorCode::InvalidArgument, "Katz factor must be positive");
    const std::size_t n = g.node_count();
    CentralityVector c{CentralityVector::Kind::Katz, factor, std::vector<double>(n, 0.0)};
    if (n == 0) return c;

    const double rho = spectral_radius(g);
    if (factor * rho >= 1.0)
        fail(ErrorCode::DivergentSeries, "factor * rho(W) = " + std::to_string(factor * rho) +
                                             " >= 1");

    // term_t = factor^t W^t 1, accumulated until its largest entry drops below tol.
    std::vector<double> term(n, 1.0), next(n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double largest = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            double s = 0.0;
            for (const auto& a : g.out_arcs(i)) s += a.weight * term[a.node];
            next[i] = factor * s;
            largest = std::max(largest, next[i]);
        }
        term.swap(next);
        for (NodeId i = 0; i < n; ++i) c.values[i] += term[i];
        if (largest < tol) return c;
    }
    fail(ErrorCode::NonConvergent, "Katz series did not settle");
}

CentralityVector degree_centrality(const Graph& g) {
    CentralityVector c{CentralityVector::Kind::Degree, 0.0, {}};
    c.values.resize(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i)
        c.values[i] = static_cast<double>(g.out_arcs(i).size());
    return c;
}

std::vector<NodeId> rank_by_score(std::span<const double> scores) {
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
    return order;
}

std::vector<NodeId> top_k(const CentralityVector& c, std::span<const double> scale,
                          std::size_t k) {
    const std::size_t n = c.values.size();
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    if (k > n)
        fail(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    if (!scale.empty() && scale.size() != n)
        fail(ErrorCode::InvalidArgument, "scale vector must have one entry per node");

    std::vector<double> scores(c.values);
    if (!scale.empty())
        for (std::size_t j = 0; j < n; ++j) scores[j] *= scale[j];
    auto order = rank_by_score(scores);
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

} // namespace gipmax
