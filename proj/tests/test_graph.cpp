#include <doctest.h>

#include <numeric>

#include "binrank/graph.hpp"
#include "binrank/rng.hpp"
#include "oracles.hpp"

using namespace binrank;

namespace {

Graph petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);        // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);              // spokes
  }
  return g;
}

Graph random_simple(SplitMix64& rng, std::size_t n, std::uint64_t density_percent) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.below(100) < density_percent) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("coverage_count on documented cases") {
  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(coverage_count(edge, {{{0}, {1}}}, {0, 1}) == 1);
  CHECK(coverage_count(edge, {{{0}, {1}}, {{1}, {0}}}, {0, 1}) == 2);

  Graph loop(1);
  loop.add_edge(0, 0);
  CHECK(coverage_count(loop, {{{0}, {0}}}, {0, 0}) == 1);

  CHECK_THROWS_AS(coverage_count(edge, {}, {1, 1}), std::invalid_argument);
}

TEST_CASE("verify_covering on documented cases") {
  const Graph k3 = Graph::complete(3);
  BicliqueCovering stars{1, {{{0}, {1, 2}}, {{1}, {2}}}};
  CHECK(verify_covering(k3, stars));

  BicliqueCovering with_loop{1, {{{0, 1}, {0, 1}}}};
  CHECK_FALSE(verify_covering(k3, with_loop));  // 0-0 would need a loop

  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  BicliqueCovering star{1, {{{0, 2}, {1}}}};
  CHECK(verify_covering(path, star));

  BicliqueCovering bad_index{1, {{{0}, {9}}}};
  CHECK_THROWS_AS(verify_covering(path, bad_index), std::out_of_range);
}

TEST_CASE("chromatic number on pinned graphs") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(chromatic_number(Graph::complete(n)).chi == n);
  }
  CHECK(chromatic_number(Graph::cycle(5)).chi == 3);
  CHECK(chromatic_number(Graph::cycle(6)).chi == 2);
  CHECK(chromatic_number(petersen()).chi == 3);
  CHECK_FALSE(k_colorable(petersen(), 2));

  Graph selfloop(2);
  selfloop.add_edge(0, 0);
  CHECK_THROWS_AS(chromatic_number(selfloop), std::invalid_argument);
}

TEST_CASE("chromatic solver agrees with exhaustive enumeration") {
  SplitMix64 rng(6001);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const Graph g = random_simple(rng, n, 50);
    const ChiResult result = chromatic_number(g);
    CHECK(result.chi == oracles::chromatic_number(g));
    CHECK(is_proper_coloring(g, result.coloring));
    CHECK_FALSE(k_colorable(g, result.chi - 1));
  }
}

TEST_CASE("biclique partition on pinned graphs") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const BpResult result = bp_exact(Graph::complete(n));
    CHECK(result.value == n - 1);
    CHECK(result.optimal);
    CHECK(verify_covering(Graph::complete(n), result.certificate));
  }

  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(bp_exact(edge).value == 1);

  // C4 is itself a complete bipartite graph.
  CHECK(oracles::bp(Graph::cycle(4)) == 1);
  CHECK(bp_exact(Graph::cycle(4)).value == 1);

  CHECK(bp_exact(Graph(3)).value == 0);

  Graph withloop(2);
  withloop.add_edge(0, 0);
  CHECK_THROWS_AS(bp_exact(withloop), std::invalid_argument);
}

TEST_CASE("biclique partition agrees with the oracle on random graphs") {
  SplitMix64 rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const Graph g = random_simple(rng, n, 55);
    CHECK(bp_exact(g).value == oracles::bp(g));
  }
}

TEST_CASE("bp budget exhaustion is flagged with a valid certificate") {
  SplitMix64 rng(8080);
  bool found = false;
  for (int attempt = 0; attempt < 50 && !found; ++attempt) {
    const Graph g = random_simple(rng, 8, 55);
    if (g.edge_count() == 0) continue;
    const BpResult r = bp_exact(g, 1);
    if (r.optimal) continue;
    found = true;
    CHECK(verify_covering(g, r.certificate));
    CHECK(r.value == r.certificate.bicliques.size());
    const BpResult full = bp_exact(g);
    REQUIRE(full.optimal);
    CHECK(r.value >= full.value);
  }
  CHECK(found);
}

TEST_CASE("partition certificates account for every edge exactly once") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = random_simple(rng, 6, 50);
    const BpResult result = bp_exact(g);
    REQUIRE(result.optimal);
    CHECK(verify_covering(g, result.certificate));
    std::size_t cells = 0;
    for (const auto& bc : result.certificate.bicliques) cells += bc.a.size() * bc.b.size();
    CHECK(cells == g.edge_count());
  }
}

TEST_CASE("partition_from_t_covering on documented cases") {
  // t = 1: the output is the covering restricted to fully covered edges.
  const Graph k3 = Graph::complete(3);
  BicliqueCovering stars{1, {{{0}, {1, 2}}, {{1}, {2}}}};
  const BicliqueCovering out = partition_from_t_covering(k3, stars);
  CHECK(out.t == 1);
  CHECK(verify_covering(k3, out));
  CHECK(out.bicliques.size() <= 2 * stars.bicliques.size());

  // A hand-built 2-covering of K4 by three bicliques.
  const Graph k4 = Graph::complete(4);
  BicliqueCovering two_cover{2,
                             {{{0, 3}, {1, 2}}, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}}};
  REQUIRE(verify_covering(k4, two_cover));
  const BicliqueCovering part = partition_from_t_covering(k4, two_cover);
  const Graph twice = exactly_t_covered_subgraph(k4, two_cover);
  CHECK(verify_covering(twice, part));
  CHECK(part.bicliques.size() <= 36);  // (2k)^t with k = 3, t = 2

  // An edge covered three times under t = 2 fails verification.
  BicliqueCovering overfull{2,
                            {{{0}, {1}}, {{0}, {1, 2}}, {{1}, {0, 3}}}};
  CHECK_THROWS_AS(partition_from_t_covering(k4, overfull), std::invalid_argument);
}

TEST_CASE("partition_from_t_covering on random 2-coverings") {
  SplitMix64 rng(909);
  int built = 0;
  while (built < 30) {
    const std::size_t n = 4 + rng.below(5);
    // Random bicliques over disjoint vertex sets, then H = their union.
    std::vector<Biclique> bicliques;
    const std::size_t count = 2 + rng.below(3);
    Graph h(n);
    for (std::size_t i = 0; i < count; ++i) {
      Biclique bc;
      for (std::size_t v = 0; v < n; ++v) {
        const auto roll = rng.below(4);
        if (roll == 0) bc.a.push_back(v);
        if (roll == 1) bc.b.push_back(v);
      }
      if (bc.a.empty() || bc.b.empty()) {
        bc.a = {0};
        bc.b = {1};
      }
      for (std::size_t a : bc.a)
        for (std::size_t b : bc.b)
          if (a != b) h.add_edge(a, b);
      bicliques.push_back(std::move(bc));
    }
    // Trim loops-by-accident: bicliques sharing a vertex across sides.
    bool genuine = true;
    for (auto& bc : bicliques) {
      for (std::size_t a : bc.a)
        for (std::size_t b : bc.b) genuine = genuine && (a != b);
    }
    if (!genuine) continue;
    BicliqueCovering cover{2, bicliques};
    if (!verify_covering(h, cover)) continue;  // some edge covered > 2 times
    ++built;

    const BicliqueCovering part = partition_from_t_covering(h, cover);
    const Graph twice = exactly_t_covered_subgraph(h, cover);
    if (twice.edge_count() == 0) {
      CHECK(part.bicliques.empty());
      continue;
    }
    CHECK(verify_covering(twice, part));
    const std::size_t k = cover.bicliques.size();
    CHECK(part.bicliques.size() <= (2 * k) * (2 * k));
  }
}

TEST_CASE("adjacency bridge: rectangles from a biclique partition") {
  const Graph k3 = Graph::complete(3);
  const BpResult bp = bp_exact(k3);
  const RectangleSet rects = rectangles_from_bicliques(k3, bp.certificate);
  CHECK(rects.rects.size() <= 2 * bp.value);
  CHECK(verify_rectangles(adjacency_matrix(k3), rects));

  // Exact cross-check: Rbin(adjacency) is at most twice bp.
  CHECK(binary_rank(adjacency_matrix(k3)).value <= 2 * bp.value);
}

TEST_CASE("adjacency bridge: coloring from a zero cover") {
  // Complete graph: diagonal singletons cover the zeros, one color each.
  const Graph k4 = Graph::complete(4);
  RectangleSet diag{RectKind::cover, {}};
  for (std::size_t v = 0; v < 4; ++v) diag.rects.push_back({{v}, {v}});
  const auto coloring = coloring_from_zero_cover(k4, diag);
  CHECK(is_proper_coloring(k4, coloring));
  CHECK(*std::max_element(coloring.begin(), coloring.end()) == 3);

  // Empty graph: one full rectangle of zeros, one color.
  const Graph empty3(3);
  RectangleSet full{RectKind::cover, {{{0, 1, 2}, {0, 1, 2}}}};
  const auto one_color = coloring_from_zero_cover(empty3, full);
  CHECK(is_proper_coloring(empty3, one_color));
  CHECK(*std::max_element(one_color.begin(), one_color.end()) == 0);

  RectangleSet bogus{RectKind::cover, {{{0}, {1}}}};
  CHECK_THROWS_AS(coloring_from_zero_cover(k4, bogus), std::invalid_argument);
}

TEST_CASE("zero cover from the Boolean rank solver colors the graph") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_simple(rng, 6, 40);
    const RankResult cover = boolean_rank(complement(adjacency_matrix(g)));
    REQUIRE(cover.optimal);
    const auto coloring = coloring_from_zero_cover(g, cover.certificate);
    CHECK(is_proper_coloring(g, coloring));
    const int colors = *std::max_element(coloring.begin(), coloring.end()) + 1;
    CHECK(static_cast<std::size_t>(colors) <= cover.value);
  }
}

TEST_CASE("graph and covering JSON round-trip") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 2);
  g.add_edge(1, 3);
  const Graph back = graph_from_json(graph_to_json(g));
  CHECK(back == g);

  BicliqueCovering c{2, {{{0}, {1, 3}}, {{2}, {2}}}};
  const BicliqueCovering cback = covering_from_json(covering_to_json(c));
  CHECK(cback.t == 2);
  CHECK(cback.bicliques == c.bicliques);
}
