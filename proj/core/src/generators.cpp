#include "gipmax/generators.hpp"

#include "gipmax/error.hpp"
#include "gipmax/rng.hpp"

namespace gipmax {
namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        fail(ErrorCode::InvalidArgument, std::string(name) + " must lie in [0, 1]");
}

void check_weight(double w) {
    if (!(w > 0.0)) fail(ErrorCode::NonPositiveWeight, "edge weight must be positive");
}

void add_pair(std::vector<WeightedEdge>& edges, NodeId a, NodeId b, double w) {
    edges.push_back({a, b, w});
    edges.push_back({b, a, w});
}

} // namespace

void SbmConfig::validate() const {
    if (n1 < 1 || n2 < 1) fail(ErrorCode::InvalidArgument, "community sizes must be >= 1");
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    check_probability(p12, "p12");
    check_weight(weight);
}

void CompositeConfig::validate() const {
    if (lattice_degree % 2 != 0) fail(ErrorCode::OddDegree, "lattice degree must be even");
    if (lattice_degree >= lattice_size)
        fail(ErrorCode::InvalidArgument, "lattice degree must be below lattice size");
    check_probability(effective_er_prob(), "er_prob");
    check_probability(bridge_prob, "bridge_prob");
    check_weight(weight);
}

double CompositeConfig::effective_er_prob() const {
    return er_prob < 0.0 ? static_cast<double>(lattice_degree) / static_cast<double>(lattice_size)
                         : er_prob;
}

Graph generate_sbm(const SbmConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.node_count();
    auto rng = stream_engine(cfg.seed, 0);
    std::vector<WeightedEdge> edges;
    for (NodeId i = 0; i < n; ++i) {
        const bool i_first = i < cfg.n1;
        for (NodeId j = i + 1; j < n; ++j) {
            const bool j_first = j < cfg.n1;
            const double p = (i_first != j_first) ? cfg.p12 : (i_first ? cfg.p1 : cfg.p2);
            if (bernoulli(rng, p)) add_pair(edges, i, j, cfg.weight);
        }
    }
    return Graph::from_edges(n, edges);
}

std::vector<int> sbm_blocks(const SbmConfig& cfg) {
    std::vector<int> blocks(cfg.node_count(), 1);
    std::fill(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(cfg.n1), 0);
    return blocks;
}

Graph generate_er(std::size_t n, double p, double weight, std::uint64_t seed) {
    check_probability(p, "p");
    check_weight(weight);
    auto rng = stream_engine(seed, 0);
    std::vector<WeightedEdge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (bernoulli(rng, p)) add_pair(edges, i, j, weight);
    return Graph::from_edges(n, edges);
}

Graph generate_lattice(std::size_t n, std::size_t d, double weight) {
    if (d % 2 != 0) fail(ErrorCode::OddDegree, "lattice degree " + std::to_string(d) + " is odd");
    if (d >= n) fail(ErrorCode::InvalidArgument, "lattice degree must be below node count");
    check_weight(weight);
    std::vector<WeightedEdge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (std::size_t r = 1; r <= d / 2; ++r)
            add_pair(edges, i, static_cast<NodeId>((i + r) % n), weight);
    return Graph::from_edges(n, edges);
}

Graph compose_networks(const Graph& g1, const Graph& g2, double p_o, double weight,
                       std::uint64_t seed) {
    if (g1.node_count() == 0 || g2.node_count() == 0)
        fail(ErrorCode::InvalidArgument, "cannot compose an empty graph");
    check_probability(p_o, "p_o");
    check_weight(weight);

    const auto n1 = static_cast<NodeId>(g1.node_count());
    const auto n2 = static_cast<NodeId>(g2.node_count());
    std::vector<WeightedEdge> edges = g1.edges();
    for (const auto& e : g2.edges()) edges.push_back({e.src + n1, e.dst + n1, e.weight});

    auto rng = stream_engine(seed, 0);
    for (NodeId i = 0; i < n1; ++i)
        for (NodeId j = 0; j < n2; ++j)
            if (bernoulli(rng, p_o)) add_pair(edges, i, n1 + j, weight);
    return Graph::from_edges(n1 + n2, edges);
}

Graph generate_composite(const CompositeConfig& cfg) {
    cfg.validate();
    Graph lattice = generate_lattice(cfg.lattice_size, cfg.lattice_degree, cfg.weight);
    Graph er = generate_er(cfg.lattice_size, cfg.effective_er_prob(), cfg.weight,
                           mix_seed(cfg.seed ^ 0x45525f5041525431ULL));
    return compose_networks(lattice, er, cfg.bridge_prob, cfg.weight,
                            mix_seed(cfg.seed ^ 0x4252494447455331ULL));
}

} // namespace gipmax
