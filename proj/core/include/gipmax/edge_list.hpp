#pragma once

#include <iosfwd>
#include <string>

#include "gipmax/graph.hpp"

namespace gipmax {

struct EdgeListOptions {
    double default_weight = 1.0;
    /// Add the reverse edge (same weight) for every line.
    bool bidirectional = false;
};

/// Reads whitespace-separated `src dst [weight]` lines. Blank lines and
/// lines starting with `#` are skipped. Labels are arbitrary tokens mapped to
/// dense indices in order of first appearance; the mapping is kept on the
/// returned graph. Errors carry the 1-based line number.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path,
                          const EdgeListOptions& options = {});

/// Writes one `src dst weight` line per directed edge, using labels.
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace gipmax
