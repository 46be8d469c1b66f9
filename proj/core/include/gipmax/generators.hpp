#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gipmax/graph.hpp"

namespace gipmax {

/// Two-block planted SBM. Nodes 0..n1-1 form block 1, n1..n1+n2-1 block 2.
/// Each unordered pair is linked independently (as two directed edges of
/// weight `weight`) with p1, p2 or p12 depending on block membership.
struct SbmConfig {
    std::size_t n1 = 25;
    std::size_t n2 = 25;
    double p1 = 0.9;
    double p2 = 0.9;
    double p12 = 0.1;
    double weight = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t node_count() const { return n1 + n2; }
};

/// Ring lattice + ER graph joined by random bridges.
struct CompositeConfig {
    std::size_t lattice_size = 25;
    std::size_t lattice_degree = 4;
    /// Probability for the ER part; negative means d_o / n_o.
    double er_prob = -1.0;
    double bridge_prob = 0.01;
    double weight = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
    double effective_er_prob() const;
};

Graph generate_sbm(const SbmConfig& cfg);

/// Block label (0 or 1) per node of a graph produced by generate_sbm.
std::vector<int> sbm_blocks(const SbmConfig& cfg);

Graph generate_er(std::size_t n, double p, double weight, std::uint64_t seed);

/// Ring lattice: node i links both ways to i +- 1, ..., i +- d/2 (mod n).
/// Throws OddDegree for odd d and InvalidArgument unless d < n.
Graph generate_lattice(std::size_t n, std::size_t d, double weight);

/// Disjoint union with g2 offset by n1, plus bidirectional bridges placed
/// independently with probability p_o on each (g1, g2) node pair.
Graph compose_networks(const Graph& g1, const Graph& g2, double p_o,
                       double weight, std::uint64_t seed);

/// Lattice (nodes 0..n_o-1) composed with an ER graph (n_o..2n_o-1).
Graph generate_composite(const CompositeConfig& cfg);

} // namespace gipmax
