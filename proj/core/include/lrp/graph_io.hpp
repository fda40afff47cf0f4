#pragma once

#include <iosfwd>
#include <string>

#include "lrp/graph.hpp"

namespace lrp {

/// Versioned text format. Line 1:
///   lrp1 d=<d> n=<n> s=<s> beta=<beta> seed=<u64> trial=<u64> edges=<count>
/// followed by one "u v" long edge per line, u < v, pairs in ascending order.
/// Lattice edges are implied by the parameters and never written. Reals use
/// shortest round-trip formatting, so rewriting a graph is byte-identical.
void write_graph(const GridGraph& g, std::ostream& out);
void write_graph_file(const GridGraph& g, const std::string& path);
std::string graph_to_string(const GridGraph& g);

/// Parses and validates a graph file. Any malformed header, out-of-range id,
/// self-loop, duplicate or out-of-order edge raises ParseError with the
/// offending line number.
GridGraph read_graph(std::istream& in);
GridGraph read_graph_file(const std::string& path);
GridGraph graph_from_string(const std::string& text);

}  // namespace lrp
