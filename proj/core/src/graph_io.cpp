#include "lrp/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lrp/errors.hpp"
#include "lrp/format.hpp"

namespace lrp {

namespace {

constexpr std::string_view kMagic = "lrp1";

std::string_view next_token(std::string_view& rest) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  std::size_t end = rest.find(' ');
  std::string_view tok = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return tok;
}

std::string_view expect_field(std::string_view& rest, std::string_view key) {
  std::string_view tok = next_token(rest);
  if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key ||
      tok[key.size()] != '=') {
    throw ParseError("graph header: expected " + std::string(key) + "=<value>", 1);
  }
  return tok.substr(key.size() + 1);
}

}  // namespace

void write_graph(const GridGraph& g, std::ostream& out) {
  const ModelParams& p = g.params();
  out << kMagic << " d=" << p.d << " n=" << p.n << " s=" << format_double(p.s)
      << " beta=" << format_double(p.beta) << " seed=" << p.seed << " trial=" << g.trial()
      << " edges=" << g.long_edge_count() << '\n';
  for (const auto& [u, v] : g.long_edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(const GridGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_graph(g, out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string graph_to_string(const GridGraph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

GridGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("graph file: empty input", 0);

  std::string_view rest = line;
  if (next_token(rest) != kMagic) {
    throw ParseError("graph header: missing '" + std::string(kMagic) + "' magic", 1);
  }
  const auto d = parse_int(expect_field(rest, "d"));
  const auto n = parse_int(expect_field(rest, "n"));
  const auto s = parse_double(expect_field(rest, "s"));
  const auto beta = parse_double(expect_field(rest, "beta"));
  const auto seed = parse_uint(expect_field(rest, "seed"));
  const auto trial = parse_uint(expect_field(rest, "trial"));
  const auto edges = parse_int(expect_field(rest, "edges"));
  if (!d || !n || !s || !beta || !seed || !trial || !edges || *edges < 0) {
    throw ParseError("graph header: unparsable field value", 1);
  }
  while (!rest.empty()) {
    if (!next_token(rest).empty()) throw ParseError("graph header: trailing tokens", 1);
  }

  ModelParams params;
  try {
    params = ModelParams(static_cast<int>(*d), *n, *s, *beta, *seed);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph header: ") + e.what(), 1);
  }

  const std::int64_t nodes = params.node_count();
  std::vector<Edge> long_edges;
  long_edges.reserve(static_cast<std::size_t>(*edges));
  GridPoint pa, pb;
  for (std::int64_t i = 0; i < *edges; ++i) {
    const int line_no = static_cast<int>(i) + 2;
    if (!std::getline(in, line)) throw ParseError("graph body: unexpected end of input", line_no);
    std::string_view body = line;
    const auto u = parse_int(next_token(body));
    const auto v = parse_int(next_token(body));
    while (!body.empty()) {
      if (!next_token(body).empty()) throw ParseError("graph body: trailing tokens", line_no);
    }
    if (!u || !v) throw ParseError("graph body: expected 'u v'", line_no);
    if (*u < 0 || *v >= nodes) throw ParseError("graph body: node id out of range", line_no);
    if (*u == *v) throw ParseError("graph body: self-loop", line_no);
    if (*u > *v) throw ParseError("graph body: endpoints not in (min, max) order", line_no);
    if (!long_edges.empty() && std::make_pair(*u, *v) <= long_edges.back()) {
      throw ParseError("graph body: edges unsorted or duplicated", line_no);
    }
    grid_point_into(*u, params, pa);
    grid_point_into(*v, params, pb);
    if (l1_distance(pa, pb) < 2) {
      throw ParseError("graph body: lattice pairs are implied and may not be listed", line_no);
    }
    long_edges.emplace_back(*u, *v);
  }
  while (std::getline(in, line)) {
    std::string_view body = line;
    if (!next_token(body).empty()) {
      throw ParseError("graph body: trailing content after edge list",
                       static_cast<int>(*edges) + 2);
    }
  }
  return GridGraph::from_long_edges(params, *trial, std::move(long_edges));
}

GridGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_graph(in);
}

GridGraph graph_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace lrp
