#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gipmax/graph.hpp"

namespace gipmax {

struct CentralityVector {
    enum class Kind { Katz, Degree };

    Kind kind = Kind::Degree;
    double factor = 0.0; // Katz only
    std::vector<double> values;
};

/// c = sum_{t>=1} factor^t W^t 1, i.e. ((I - factor W)^-1 - I) 1. Weights walks
/// leaving each node. The series is summed until the largest increment drops
/// below `tol`. Throws DivergentSeries when factor * rho(W) >= 1 and
/// NonConvergent after `max_iter` terms.
CentralityVector katz_centrality(const Graph& g, double factor, double tol = 1e-13,
                                 std::size_t max_iter = 1000000);

/// Out-degree (number of out-neighbours), unweighted.
CentralityVector degree_centrality(const Graph& g);

/// The k nodes with the largest scale_j * c_j, ties to the lower index,
/// returned in ascending node order. Empty `scale` means all ones.
/// Throws KTooLarge when k > n and InvalidArgument when k == 0.
std::vector<NodeId> top_k(const CentralityVector& c, std::span<const double> scale,
                          std::size_t k);

/// Node order by descending scale_j * c_j, ascending index on ties.
std::vector<NodeId> rank_by_score(std::span<const double> scores);

} // namespace gipmax
