#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gipmax {

using NodeId = std::uint32_t;

struct Arc {
    NodeId node;
    double weight;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct WeightedEdge {
    NodeId src;
    NodeId dst;
    double weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Sparse weighted directed graph. W_ij > 0 is stored on out_adj[i] as
/// (j, W_ij) and on in_adj[j] as (i, W_ij); absent edges have W_ij = 0.
/// Both adjacency lists are sorted by neighbour index. Immutable once built.
class Graph {
  public:
    Graph() = default;

    /// Throws Error on self-loops, duplicate pairs, nonpositive weights or
    /// out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::span<const WeightedEdge> edges,
                            std::vector<std::string> labels = {});

    std::size_t node_count() const noexcept { return out_adj_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Arc> out_arcs(NodeId i) const { return out_adj_[i]; }
    std::span<const Arc> in_arcs(NodeId j) const { return in_adj_[j]; }

    /// W_ij, or 0 when the edge is absent. O(log deg).
    double weight(NodeId i, NodeId j) const;

    /// Edges in (src, dst) lexicographic order.
    std::vector<WeightedEdge> edges() const;

    /// External label of a node; the decimal index when no labels were given.
    std::string label(NodeId i) const;
    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

  private:
    std::vector<std::vector<Arc>> out_adj_;
    std::vector<std::vector<Arc>> in_adj_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

/// alpha = sum of stored weights / |E|. Throws EmptyGraph when |E| = 0.
double mean_weight(const Graph& g);

/// Smallest stored weight. Throws EmptyGraph when |E| = 0.
double min_weight(const Graph& g);

/// Dominant eigenvalue modulus of W. Each strongly connected component is
/// handled separately with a shifted power iteration on (W_C + I), stopping
/// once the Collatz-Wielandt bracket is narrower than `tol`.
/// Throws NonConvergent after `max_iter` sweeps in any component.
double spectral_radius(const Graph& g, double tol = 1e-12,
                       std::size_t max_iter = 100000);

/// Strongly connected components; returns component id per node.
std::vector<std::uint32_t> strongly_connected_components(const Graph& g,
                                                         std::size_t& count);

/// True when the underlying undirected graph is connected (n <= 1 counts).
bool is_weakly_connected(const Graph& g);

} // namespace gipmax
