#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"

namespace binrank {

/// Undirected graph without parallel edges; loops are allowed.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const;

  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  bool has_loop(std::size_t u) const { return has_edge(u, u); }
  bool is_simple() const;

  /// Number of distinct neighbors; a loop contributes one (the vertex
  /// itself). Every degree claim in this library is about simple graphs.
  std::size_t degree(std::size_t u) const { return adj_[u].count(); }

  /// All degrees equal; meaningful for simple graphs.
  std::optional<std::size_t> regular_degree() const;

  /// Edges as sorted (u, v) pairs with u <= v; loops appear as (u, u).
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Subgraph induced on `verts`; vertex i of the result is verts[i].
  Graph induced(const std::vector<std::size_t>& verts) const;

  const boost::dynamic_bitset<>& neighbors(std::size_t u) const { return adj_[u]; }

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<boost::dynamic_bitset<>> adj_;
};

/// Ordered pair of vertex sets, every a in A adjacent to every b in B.
/// Covers oriented edges (a, b); an unordered edge can be covered in one or
/// both orientations.
struct Biclique {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;

  friend bool operator==(const Biclique&, const Biclique&) = default;
};

struct BicliqueCovering {
  std::size_t t = 1;  // every edge covered between 1 and t times
  std::vector<Biclique> bicliques;
};

/// Oriented coverage count of one edge: for a non-loop {u, v} the number of
/// (biclique, orientation) incidences; for a loop the number of bicliques
/// with u in both parts. Throws std::invalid_argument when e is not an edge.
std::size_t coverage_count(const Graph& g, const std::vector<Biclique>& cover,
                           std::pair<std::size_t, std::size_t> e);

/// Every pair is a genuine biclique of g and every edge is covered between
/// 1 and c.t times. Throws std::out_of_range for bad vertex indices.
bool verify_covering(const Graph& g, const BicliqueCovering& c);

bool is_biclique(const Graph& g, const Biclique& b);

struct ChiResult {
  std::size_t chi = 0;
  std::vector<int> coloring;
};

/// Exact chromatic number with a witnessing coloring. Branch and bound with
/// a greedy clique lower bound and DSATUR branching. Throws on loops.
ChiResult chromatic_number(const Graph& g);

/// A proper coloring with at most `colors` colors, if one exists.
std::optional<std::vector<int>> find_coloring(const Graph& g, std::size_t colors);
bool k_colorable(const Graph& g, std::size_t colors);
bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring);

struct BpResult {
  std::size_t value = 0;
  BicliqueCovering certificate;  // t = 1
  bool optimal = false;
};

/// Minimum biclique partition of a simple graph: branches on the first
/// uncovered edge over maximal bicliques of the uncovered subgraph.
BpResult bp_exact(const Graph& g, std::size_t node_budget = kDefaultNodeBudget);

/// Edges of h covered exactly c.t times by c.
Graph exactly_t_covered_subgraph(const Graph& h, const BicliqueCovering& c);

/// Groups the exactly-t-covered edges of a simple graph by the label
/// (covering indices plus orientation pattern) and emits one biclique per
/// label: a biclique partition of the exactly-t-covered subgraph of size at
/// most (2k)^t. Throws when c fails verification.
BicliqueCovering partition_from_t_covering(const Graph& h, const BicliqueCovering& c);

BoolMatrix adjacency_matrix(const Graph& g);

/// Two rectangles (A x B and B x A) per biclique of a partition of a simple
/// graph: a rectangle partition of the ones of the adjacency matrix.
RectangleSet rectangles_from_bicliques(const Graph& g, const BicliqueCovering& partition);

/// Proper coloring from a rectangle cover of the zeros of the adjacency
/// matrix: vertex v gets the first rectangle containing the diagonal cell
/// (v, v). The cover must verify against the complement of the adjacency.
std::vector<int> coloring_from_zero_cover(const Graph& g, const RectangleSet& zero_cover);

/// Graph JSON: {"n":N,"edges":[[u,v],...]} with u <= v.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

/// Covering JSON: {"t":T,"bicliques":[{"A":[...],"B":[...]},...]}.
std::string covering_to_json(const BicliqueCovering& c);
BicliqueCovering covering_from_json(std::string_view text);

}  // namespace binrank
