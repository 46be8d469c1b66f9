#include "gipmax/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gipmax/error.hpp"

namespace gipmax {
namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool parse_weight(const std::string& token, double& out) {
    // from_chars for double is available in libstdc++ 11.
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
    if (!(options.default_weight > 0.0))
        fail(ErrorCode::NonPositiveWeight, "default weight must be positive");

    std::unordered_map<std::string, NodeId> index;
    std::vector<std::string> labels;
    std::vector<WeightedEdge> edges;
    std::unordered_set<std::uint64_t> seen;

    auto node_of = [&](const std::string& label) {
        auto [it, inserted] = index.try_emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };
    auto add = [&](NodeId s, NodeId d, double w, std::size_t line_no) {
        if (!seen.insert(pair_key(s, d)).second)
            fail(ErrorCode::DuplicateEdge, "line " + std::to_string(line_no) + ": edge " +
                                               labels[s] + " -> " + labels[d] + " repeated");
        edges.push_back({s, d, w});
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string src, dst, weight_token, extra;
        if (!(fields >> src) || src.front() == '#') continue;
        const std::string where = "line " + std::to_string(line_no);
        if (!(fields >> dst)) fail(ErrorCode::MalformedLine, where + ": expected `src dst [weight]`");
        double w = options.default_weight;
        if (fields >> weight_token) {
            if (!parse_weight(weight_token, w))
                fail(ErrorCode::MalformedLine, where + ": bad weight '" + weight_token + "'");
            if (!(w > 0.0)) fail(ErrorCode::NonPositiveWeight, where + ": weight must be positive");
        }
        if (fields >> extra) fail(ErrorCode::MalformedLine, where + ": trailing field '" + extra + "'");

        NodeId s = node_of(src);
        NodeId d = node_of(dst);
        if (s == d) fail(ErrorCode::SelfLoop, where + ": self-edge on " + src);
        add(s, d, w, line_no);
        if (options.bidirectional) add(d, s, w, line_no);
    }
    const std::size_t n = labels.size();
    return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
    return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    char buf[64];
    for (const auto& e : g.edges()) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, e.weight);
        out << g.label(e.src) << ' ' << g.label(e.dst) << ' ' << std::string_view(buf, end - buf)
            << '\n';
    }
}

} // namespace gipmax
