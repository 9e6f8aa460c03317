#include "binrank/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "concept_enum.hpp"

namespace binrank {

namespace {

using Bits = boost::dynamic_bitset<>;

void check_vertex(const Graph& g, std::size_t v) {
  if (v >= g.vertex_count()) {
    throw std::out_of_range("graph: vertex index out of range");
  }
}

void require_simple(const Graph& g, const char* who) {
  if (!g.is_simple()) {
    throw std::invalid_argument(std::string(who) + ": graph must not have loops");
  }
}

}  // namespace

Graph::Graph(std::size_t n) : adj_(n, Bits(n)) {}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0, loops = 0;
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    twice += adj_[u].count();
    if (adj_[u].test(u)) ++loops;
  }
  return (twice - loops) / 2 + loops;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  check_vertex(*this, u);
  check_vertex(*this, v);
  adj_[u].set(v);
  adj_[v].set(u);
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  check_vertex(*this, u);
  check_vertex(*this, v);
  return adj_[u].test(v);
}

bool Graph::is_simple() const {
  for (std::size_t u = 0; u < adj_.size(); ++u)
    if (adj_[u].test(u)) return false;
  return true;
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (adj_.empty()) return 0;
  const std::size_t d = adj_[0].count();
  for (std::size_t u = 1; u < adj_.size(); ++u)
    if (adj_[u].count() != d) return std::nullopt;
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (std::size_t v = adj_[u].find_first(); v != Bits::npos; v = adj_[u].find_next(v)) {
      if (v >= u) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<std::size_t>& verts) const {
  Graph out(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    check_vertex(*this, verts[i]);
    for (std::size_t j = i; j < verts.size(); ++j) {
      if (adj_[verts[i]].test(verts[j])) out.add_edge(i, j);
    }
  }
  return out;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

std::size_t coverage_count(const Graph& g, const std::vector<Biclique>& cover,
                           std::pair<std::size_t, std::size_t> e) {
  const auto [u, v] = e;
  if (!g.has_edge(u, v)) {
    throw std::invalid_argument("coverage_count: the pair is not an edge");
  }
  std::size_t count = 0;
  for (const auto& bc : cover) {
    const bool u_in_a = std::binary_search(bc.a.begin(), bc.a.end(), u);
    const bool u_in_b = std::binary_search(bc.b.begin(), bc.b.end(), u);
    if (u == v) {
      count += u_in_a && u_in_b;
      continue;
    }
    const bool v_in_a = std::binary_search(bc.a.begin(), bc.a.end(), v);
    const bool v_in_b = std::binary_search(bc.b.begin(), bc.b.end(), v);
    count += (u_in_a && v_in_b) + (v_in_a && u_in_b);
  }
  return count;
}

bool is_biclique(const Graph& g, const Biclique& b) {
  for (std::size_t x : b.a) check_vertex(g, x);
  for (std::size_t y : b.b) check_vertex(g, y);
  for (std::size_t x : b.a)
    for (std::size_t y : b.b)
      if (!g.has_edge(x, y)) return false;
  return true;
}

namespace {

Biclique sorted_biclique(const Biclique& b) {
  Biclique out = b;
  std::sort(out.a.begin(), out.a.end());
  out.a.erase(std::unique(out.a.begin(), out.a.end()), out.a.end());
  std::sort(out.b.begin(), out.b.end());
  out.b.erase(std::unique(out.b.begin(), out.b.end()), out.b.end());
  return out;
}

}  // namespace

bool verify_covering(const Graph& g, const BicliqueCovering& c) {
  if (c.t == 0) return false;
  std::vector<Biclique> normalized;
  normalized.reserve(c.bicliques.size());
  for (const auto& bc : c.bicliques) {
    Biclique nb = sorted_biclique(bc);
    if (!is_biclique(g, nb)) return false;
    normalized.push_back(std::move(nb));
  }
  for (const auto& e : g.edges()) {
    const std::size_t k = coverage_count(g, normalized, e);
    if (k == 0 || k > c.t) return false;
  }
  return true;
}

// ---- coloring ----------------------------------------------------------

namespace {

struct ColorSearch {
  const Graph& g;
  std::size_t limit;
  std::vector<int> color;
  std::vector<Bits> neighbor_colors;  // per vertex, colors used next door
  std::size_t colored = 0;
  int max_used = -1;  // highest color index assigned so far

  ColorSearch(const Graph& graph, std::size_t colors)
      : g(graph), limit(colors), color(graph.vertex_count(), -1),
        neighbor_colors(graph.vertex_count(), Bits(colors + 1)) {}

  std::size_t pick() const {
    std::size_t best = g.vertex_count();
    std::size_t best_sat = 0, best_deg = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (color[v] >= 0) continue;
      const std::size_t sat = neighbor_colors[v].count();
      const std::size_t deg = g.degree(v);
      if (best == g.vertex_count() || sat > best_sat ||
          (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return best;
  }

  bool run() {
    if (colored == g.vertex_count()) return true;
    const std::size_t v = pick();
    // A fresh color only needs to be tried once.
    const int top = std::min<int>(static_cast<int>(limit) - 1, max_used + 1);
    for (int c = 0; c <= top; ++c) {
      if (neighbor_colors[v].test(c)) continue;
      color[v] = c;
      ++colored;
      const int saved_max = max_used;
      max_used = std::max(max_used, c);
      std::vector<std::size_t> touched;
      for (std::size_t w = g.neighbors(v).find_first(); w != Bits::npos;
           w = g.neighbors(v).find_next(w)) {
        if (!neighbor_colors[w].test(c)) {
          neighbor_colors[w].set(c);
          touched.push_back(w);
        }
      }
      if (run()) return true;
      for (std::size_t w : touched) neighbor_colors[w].reset(c);
      max_used = saved_max;
      --colored;
      color[v] = -1;
    }
    return false;
  }
};

std::size_t greedy_clique(const Graph& g) {
  std::vector<std::size_t> order(g.vertex_count());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  std::vector<std::size_t> clique;
  for (std::size_t v : order) {
    bool fits = true;
    for (std::size_t u : clique) {
      if (!g.has_edge(u, v)) {
        fits = false;
        break;
      }
    }
    if (fits) clique.push_back(v);
  }
  return clique.size();
}

}  // namespace

std::optional<std::vector<int>> find_coloring(const Graph& g, std::size_t colors) {
  require_simple(g, "find_coloring");
  if (g.vertex_count() == 0) return std::vector<int>{};
  if (colors == 0) return std::nullopt;
  ColorSearch search(g, colors);
  if (search.run()) return search.color;
  return std::nullopt;
}

bool k_colorable(const Graph& g, std::size_t colors) {
  return find_coloring(g, colors).has_value();
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring) {
  if (coloring.size() != g.vertex_count()) return false;
  for (const auto& [u, v] : g.edges()) {
    if (u == v) return false;  // loops admit no proper coloring
    if (coloring[u] < 0 || coloring[v] < 0) return false;
    if (coloring[u] == coloring[v]) return false;
  }
  return true;
}

ChiResult chromatic_number(const Graph& g) {
  require_simple(g, "chromatic_number");
  if (g.vertex_count() == 0) return {0, {}};

  const std::size_t lower = std::max<std::size_t>(1, greedy_clique(g));
  for (std::size_t k = lower;; ++k) {
    if (auto coloring = find_coloring(g, k)) {
      return {k, std::move(*coloring)};
    }
  }
}

// ---- biclique partition ------------------------------------------------

namespace {

struct BpSearch {
  const Graph& g;
  std::size_t n;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  bool exhausted = false;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<Biclique> best_cert;
  std::vector<Biclique> current;

  std::vector<Bits> unc;  // uncovered adjacency, symmetric

  explicit BpSearch(const Graph& graph)
      : g(graph), n(graph.vertex_count()), unc(graph.vertex_count()) {
    for (std::size_t v = 0; v < n; ++v) unc[v] = graph.neighbors(v);
  }

  bool spend() {
    if (++nodes > budget) exhausted = true;
    return !exhausted;
  }

  std::optional<std::pair<std::size_t, std::size_t>> first_uncovered() const {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t v = unc[u].find_next(u);  // partners above u
      if (v != Bits::npos) return std::make_pair(u, v);
      if (unc[u].test(u)) return std::make_pair(u, u);
    }
    return std::nullopt;
  }

  // Maximal bicliques of the uncovered subgraph containing edge (u, v),
  // oriented with u on the A side.
  std::vector<Biclique> candidates(std::size_t u, std::size_t v) {
    std::vector<std::size_t> p, q;  // A-domain, B-domain
    for (std::size_t w = unc[v].find_first(); w != Bits::npos; w = unc[v].find_next(w))
      p.push_back(w);
    for (std::size_t w = unc[u].find_first(); w != Bits::npos; w = unc[u].find_next(w))
      q.push_back(w);

    std::vector<Bits> rel(p.size(), Bits(q.size()));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        if (p[i] != q[j] && unc[p[i]].test(q[j])) rel[i].set(j);

    const auto concepts = detail::all_concepts(rel, nodes, budget, exhausted);
    if (exhausted) return {};

    std::size_t u_pos = std::find(p.begin(), p.end(), u) - p.begin();
    std::size_t v_pos = std::find(q.begin(), q.end(), v) - q.begin();

    std::vector<Biclique> out;
    for (const auto& concept_rect : concepts) {
      if (!std::binary_search(concept_rect.rows.begin(), concept_rect.rows.end(), u_pos))
        continue;
      if (!concept_rect.cols.test(v_pos)) continue;
      Biclique bc;
      for (std::size_t i : concept_rect.rows) bc.a.push_back(p[i]);
      for (std::size_t j = concept_rect.cols.find_first(); j != Bits::npos;
           j = concept_rect.cols.find_next(j))
        bc.b.push_back(q[j]);
      std::sort(bc.a.begin(), bc.a.end());
      std::sort(bc.b.begin(), bc.b.end());
      out.push_back(std::move(bc));
    }
    std::sort(out.begin(), out.end(), [](const Biclique& x, const Biclique& y) {
      const std::size_t ex = x.a.size() * x.b.size();
      const std::size_t ey = y.a.size() * y.b.size();
      if (ex != ey) return ex > ey;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
    return out;
  }

  void toggle(const Biclique& bc, bool cover) {
    for (std::size_t a : bc.a) {
      for (std::size_t b : bc.b) {
        if (cover) {
          unc[a].reset(b);
          unc[b].reset(a);
        } else {
          unc[a].set(b);
          unc[b].set(a);
        }
      }
    }
  }

  // Greedy fooling bound: uncovered edges no two of which fit in a common
  // biclique of the uncovered subgraph.
  std::size_t fooling_bound() const {
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = unc[u].find_next(u); v != Bits::npos; v = unc[u].find_next(v)) {
        bool independent = true;
        for (const auto& [x, y] : chosen) {
          const bool share_one = (u != y && unc[u].test(y)) && (x != v && unc[x].test(v));
          const bool share_two = (u != x && unc[u].test(x)) && (v != y && unc[v].test(y));
          const bool touching = u == x || u == y || v == x || v == y;
          if (touching || share_one || share_two) {
            independent = false;
            break;
          }
        }
        if (independent) chosen.emplace_back(u, v);
      }
    }
    return chosen.size();
  }

  void greedy_initial() {
    std::vector<Biclique> acc;
    for (;;) {
      const auto e = first_uncovered();
      if (!e) break;
      const auto [u, v] = *e;
      // Star at u over its uncovered neighbors is always a biclique.
      Biclique star;
      star.a.push_back(u);
      for (std::size_t w = unc[u].find_first(); w != Bits::npos; w = unc[u].find_next(w))
        star.b.push_back(w);
      toggle(star, true);
      acc.push_back(std::move(star));
    }
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) toggle(*it, false);
    best = acc.size();
    best_cert = std::move(acc);
  }

  void search() {
    if (exhausted) return;
    const auto e = first_uncovered();
    if (!e) {
      if (current.size() < best) {
        best = current.size();
        best_cert = current;
      }
      return;
    }
    if (current.size() + 1 >= best) return;
    if (current.size() + fooling_bound() >= best) return;

    const auto [u, v] = *e;
    const auto cands = candidates(u, v);
    if (exhausted) return;
    for (const auto& bc : cands) {
      if (current.size() + 1 >= best) return;
      if (!spend()) return;
      toggle(bc, true);
      current.push_back(bc);
      search();
      current.pop_back();
      toggle(bc, false);
      if (exhausted) return;
    }
  }
};

}  // namespace

BpResult bp_exact(const Graph& g, std::size_t node_budget) {
  require_simple(g, "bp_exact");
  BpResult result;
  result.certificate.t = 1;
  if (g.edge_count() == 0) {
    result.optimal = true;
    return result;
  }

  BpSearch search(g);
  search.budget = node_budget == 0 ? std::numeric_limits<std::size_t>::max() : node_budget;
  search.greedy_initial();
  search.search();

  result.value = search.best;
  result.certificate.bicliques = std::move(search.best_cert);
  result.optimal = !search.exhausted;
  return result;
}

// ---- t-covering machinery ----------------------------------------------

Graph exactly_t_covered_subgraph(const Graph& h, const BicliqueCovering& c) {
  Graph out(h.vertex_count());
  std::vector<Biclique> normalized;
  for (const auto& bc : c.bicliques) normalized.push_back(sorted_biclique(bc));
  for (const auto& e : h.edges()) {
    if (coverage_count(h, normalized, e) == c.t) out.add_edge(e.first, e.second);
  }
  return out;
}

BicliqueCovering partition_from_t_covering(const Graph& h, const BicliqueCovering& c) {
  require_simple(h, "partition_from_t_covering");
  if (!verify_covering(h, c)) {
    throw std::invalid_argument("partition_from_t_covering: covering fails verification");
  }

  std::vector<Biclique> normalized;
  for (const auto& bc : c.bicliques) normalized.push_back(sorted_biclique(bc));

  // Label of an exactly-t-covered edge: its (index, orientation) incidence
  // list, canonicalized under swapping the two endpoints.
  using LabelKey = std::vector<std::pair<std::size_t, int>>;
  std::map<LabelKey, Biclique> groups;

  for (const auto& [u, v] : h.edges()) {
    LabelKey incidences;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
      const auto& bc = normalized[i];
      const bool ua = std::binary_search(bc.a.begin(), bc.a.end(), u);
      const bool ub = std::binary_search(bc.b.begin(), bc.b.end(), u);
      const bool va = std::binary_search(bc.a.begin(), bc.a.end(), v);
      const bool vb = std::binary_search(bc.b.begin(), bc.b.end(), v);
      if (ua && vb) incidences.emplace_back(i, 0);  // u on the A side
      if (va && ub) incidences.emplace_back(i, 1);
    }
    if (incidences.size() != c.t) continue;  // not in the exactly-t layer

    LabelKey flipped = incidences;
    for (auto& [i, o] : flipped) o ^= 1;
    std::sort(flipped.begin(), flipped.end());

    std::size_t a_side = u, b_side = v;
    if (flipped < incidences) {
      incidences = std::move(flipped);
      std::swap(a_side, b_side);
    } else if (flipped == incidences) {
      // Both orientations by every covering biclique would force loops.
      throw std::logic_error("partition_from_t_covering: symmetric label on a simple graph");
    }
    auto& group = groups[incidences];
    group.a.push_back(a_side);
    group.b.push_back(b_side);
  }

  BicliqueCovering out;
  out.t = 1;
  for (auto& entry : groups) {
    out.bicliques.push_back(sorted_biclique(entry.second));
  }
  return out;
}

// ---- matrix bridge -----------------------------------------------------

BoolMatrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  BoolMatrix m(n, n);
  for (const auto& [u, v] : g.edges()) {
    m.set(u, v, true);
    m.set(v, u, true);
  }
  return m;
}

RectangleSet rectangles_from_bicliques(const Graph& g, const BicliqueCovering& partition) {
  require_simple(g, "rectangles_from_bicliques");
  if (partition.t != 1 || !verify_covering(g, partition)) {
    throw std::invalid_argument("rectangles_from_bicliques: input is not a biclique partition");
  }
  RectangleSet out;
  out.kind = RectKind::partition;
  for (const auto& bc : partition.bicliques) {
    const Biclique nb = sorted_biclique(bc);
    if (nb.a.empty() || nb.b.empty()) continue;
    out.rects.push_back({nb.a, nb.b});
    out.rects.push_back({nb.b, nb.a});
  }
  return out;
}

std::vector<int> coloring_from_zero_cover(const Graph& g, const RectangleSet& zero_cover) {
  require_simple(g, "coloring_from_zero_cover");
  if (zero_cover.kind != RectKind::cover ||
      !verify_rectangles(complement(adjacency_matrix(g)), zero_cover)) {
    throw std::invalid_argument(
        "coloring_from_zero_cover: input does not cover the adjacency zeros");
  }
  const std::size_t n = g.vertex_count();
  std::vector<int> by_rect(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < zero_cover.rects.size(); ++i) {
      const auto& rect = zero_cover.rects[i];
      if (std::find(rect.rows.begin(), rect.rows.end(), v) != rect.rows.end() &&
          std::find(rect.cols.begin(), rect.cols.end(), v) != rect.cols.end()) {
        by_rect[v] = static_cast<int>(i);
        break;
      }
    }
    // Every diagonal cell is a zero of a simple graph's adjacency, so some
    // rectangle of the verified cover contains it.
    if (by_rect[v] < 0) {
      throw std::logic_error("coloring_from_zero_cover: uncovered diagonal cell");
    }
  }
  // Compact the used rectangle indices into colors 0..k-1.
  std::map<int, int> remap;
  std::vector<int> coloring(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    coloring[v] = remap.emplace(by_rect[v], static_cast<int>(remap.size())).first->second;
  }
  return coloring;
}

// ---- JSON --------------------------------------------------------------

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j.dump();
}

Graph graph_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Graph g(j.at("n").get<std::size_t>());
  for (const auto& e : j.at("edges")) {
    g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  }
  return g;
}

std::string covering_to_json(const BicliqueCovering& c) {
  nlohmann::json j;
  j["t"] = c.t;
  nlohmann::json bicliques = nlohmann::json::array();
  for (const auto& bc : c.bicliques) {
    bicliques.push_back({{"A", bc.a}, {"B", bc.b}});
  }
  j["bicliques"] = std::move(bicliques);
  return j.dump();
}

BicliqueCovering covering_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  BicliqueCovering c;
  c.t = j.at("t").get<std::size_t>();
  for (const auto& b : j.at("bicliques")) {
    Biclique bc;
    bc.a = b.at("A").get<std::vector<std::size_t>>();
    bc.b = b.at("B").get<std::vector<std::size_t>>();
    c.bicliques.push_back(std::move(bc));
  }
  return c;
}

}  // namespace binrank
