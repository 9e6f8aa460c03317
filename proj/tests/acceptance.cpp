// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Each criterion also carries a wall-clock limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "binrank/boolfn.hpp"
#include "binrank/entropy.hpp"
#include "binrank/gadget.hpp"
#include "binrank/graph.hpp"
#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"
#include "binrank/rng.hpp"
#include "binrank/transform.hpp"
#include "oracles.hpp"

using namespace binrank;

namespace {

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<bool(std::string&)> body;
};

BoolMatrix circulant(std::size_t n, std::size_t mask) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < n; ++s)
      if (mask & (std::size_t{1} << s)) m.set(i, (i + s) % n, true);
  return m;
}

bool graham_pollak(std::string& why) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const BpResult result = bp_exact(Graph::complete(n));
    if (!result.optimal || result.value != n - 1 ||
        !verify_covering(Graph::complete(n), result.certificate)) {
      why = "K_" + std::to_string(n) + " gave " + std::to_string(result.value);
      return false;
    }
  }
  return true;
}

bool gadget_regularity(std::string& why) {
  for (int ell = 1; ell <= 8; ++ell) {
    const Gadget g = gadget_gl(ell);
    const auto d = is_regular(g.table);
    if (!d || *d != g.side() / 2 || !is_strongly_unbiased(g)) {
      why = "ell=" + std::to_string(ell);
      return false;
    }
  }
  return true;
}

bool discrepancy_bounds(std::string& why) {
  const Rational d1 = discrepancy_exact(gadget_gl(1));
  if (d1 != Rational(1, 4)) {
    why = "exact value at ell=1 is not 1/4";
    return false;
  }
  for (int ell = 1; ell <= 2; ++ell) {
    if (!within_discrepancy_bound(discrepancy_exact(gadget_gl(ell)), ell)) {
      why = "exact bound fails at ell=" + std::to_string(ell);
      return false;
    }
  }
  for (int ell = 3; ell <= 4; ++ell) {
    const Rational sampled = discrepancy_sample(gadget_gl(ell), 100000, 2024 + ell);
    if (!within_discrepancy_bound(sampled, ell)) {
      why = "sampled bound fails at ell=" + std::to_string(ell);
      return false;
    }
  }
  return true;
}

bool lindsey(std::string& why) {
  for (int ell = 0; ell <= 4; ++ell) {
    if (!lindsey_check(hadamard(ell))) {
      why = "ell=" + std::to_string(ell);
      return false;
    }
  }
  return true;
}

bool composition_regularity(std::string& why) {
  for (int n = 1; n <= 3; ++n) {
    for (int ell = 1; ell <= 2; ++ell) {
      const Gadget g = gadget_gl(ell);
      const std::uint64_t tables = std::uint64_t{1} << (std::size_t{1} << n);
      for (std::uint64_t t = 0; t < tables; ++t) {
        const TruthTable f = TruthTable::from_integer(n, t);
        const BoolMatrix m = compose(f, g);
        const auto d = is_regular(m);
        const std::size_t expect = (std::size_t{1} << ((ell - 1) * n)) * f.ones_count();
        if (!d || *d != expect) {
          why = "n=" + std::to_string(n) + " ell=" + std::to_string(ell) +
                " table=" + std::to_string(t);
          return false;
        }
      }
    }
  }
  return true;
}

bool rank_inequalities(std::string& why) {
  auto check = [&](const BoolMatrix& m) {
    const RankResult rb = binary_rank(m);
    const RankResult rc = boolean_rank(m);
    if (!rb.optimal || !rc.optimal) {
      why = "budget exhausted";
      return false;
    }
    if (rb.value < rc.value || rb.value < real_rank(m) ||
        !verify_rectangles(m, rb.certificate) || !verify_rectangles(m, rc.certificate)) {
      why = "inequality or certificate failure";
      return false;
    }
    return true;
  };
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    BoolMatrix m(3, 3);
    for (std::size_t cell = 0; cell < 9; ++cell) {
      if (bits & (1u << cell)) m.set(cell / 3, cell % 3, true);
    }
    if (!check(m)) {
      why += " at 3x3 table " + std::to_string(bits);
      return false;
    }
  }
  SplitMix64 rng(160924);
  for (int trial = 0; trial < 500; ++trial) {
    BoolMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m.set(r, c, rng.coin());
    if (!check(m)) {
      why += " at random 4x4 trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool complement_rank(std::string& why) {
  SplitMix64 rng(7031988);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(11);  // up to 12
    const std::size_t d = 1 + rng.below(n - 1);
    const BoolMatrix m = random_regular(n, d, rng.next());
    if (is_regular(m) != d) {
      why = "generator failed at trial " + std::to_string(trial);
      return false;
    }
    if (real_rank(m) != real_rank(complement(m))) {
      why = "rank mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool lifted_partitions(std::string& why) {
  Dnf and2;
  and2.vars = 2;
  and2.unambiguous = true;
  and2.clauses.push_back({{{1, 1}, {2, 1}}});

  Dnf xor2;
  xor2.vars = 2;
  xor2.unambiguous = true;
  xor2.clauses.push_back({{{1, 1}, {2, 0}}});
  xor2.clauses.push_back({{{1, 0}, {2, 1}}});

  const std::vector<std::pair<std::string, Dnf>> functions = {{"and2", and2}, {"xor2", xor2}};
  for (const auto& [name, phi] : functions) {
    for (int ell = 1; ell <= 2; ++ell) {
      const Gadget g = gadget_gl(ell);
      const BoolMatrix composed = compose(evaluate_dnf(phi), g);
      const RectangleSet cert = lifted_partition(phi, g);
      if (!verify_rectangles(composed, cert)) {
        why = name + " ell=" + std::to_string(ell) + ": certificate fails";
        return false;
      }
      const RankResult exact = binary_rank(composed);
      if (!exact.optimal) {
        why = name + " ell=" + std::to_string(ell) + ": budget exhausted";
        return false;
      }
      if (cert.rects.size() < exact.value) {
        why = name + " ell=" + std::to_string(ell) + ": lifted size below the optimum";
        return false;
      }
    }
  }
  return true;
}

bool t_covering_partitions(std::string& why) {
  SplitMix64 rng(51);
  int built = 0;
  while (built < 100) {
    Graph h(0);
    BicliqueCovering cover;

    if (built % 2 == 0) {
      // Random 2-coverings: union of random bicliques, kept when no edge is
      // covered more than twice.
      const std::size_t n = 4 + rng.below(5);  // up to 8 vertices
      h = Graph(n);
      std::vector<Biclique> bicliques;
      const std::size_t count = 2 + rng.below(3);
      bool genuine = true;
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
          for (std::size_t b : bc.b) genuine = genuine && (a != b);
        if (!genuine) break;
        for (std::size_t a : bc.a)
          for (std::size_t b : bc.b) h.add_edge(a, b);
        bicliques.push_back(std::move(bc));
      }
      if (!genuine) continue;
      cover = {2, bicliques};
      if (!verify_covering(h, cover)) continue;
    } else {
      // 1-coverings: biclique partitions of random graphs.
      const std::size_t n = 4 + rng.below(5);
      h = Graph(n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (rng.below(100) < 45) h.add_edge(u, v);
      if (h.edge_count() == 0) continue;
      const BpResult bp = bp_exact(h);
      if (!bp.optimal) continue;
      cover = bp.certificate;
    }
    ++built;

    const std::size_t k = cover.bicliques.size();
    const BicliqueCovering part = partition_from_t_covering(h, cover);
    std::size_t bound = 1;
    for (std::size_t i = 0; i < cover.t; ++i) bound *= 2 * k;
    if (part.bicliques.size() > bound) {
      why = "size bound violated at instance " + std::to_string(built);
      return false;
    }
    const Graph exact_layer = exactly_t_covered_subgraph(h, cover);
    if (exact_layer.edge_count() > 0 && !verify_covering(exact_layer, part)) {
      why = "partition fails verification at instance " + std::to_string(built);
      return false;
    }
  }
  return true;
}

bool transform_end_to_end(std::string& why) {
  std::vector<BoolMatrix> inputs;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
      inputs.push_back(circulant(n, mask));
    }
  }
  SplitMix64 rng(1123);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    inputs.push_back(random_regular(4, d, rng.next()));
  }

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const TransformOutput out = transform(inputs[i]);
    const TransformReport report = verify_output(inputs[i], out);
    if (!report.pass) {
      why = "instance " + std::to_string(i) + " failed:";
      for (const auto& check : report.checks) {
        if (!check.pass) why += " " + check.name;
      }
      return false;
    }
  }
  return true;
}

bool certificate_measures(std::string& why) {
  struct Expect {
    std::string name;
    TruthTable f;
    int c1v, c0v, uc1v;
  };
  const std::vector<Expect> table = {
      {"or3", tt_or(3), 1, 3, 3},
      {"and3", tt_and(3), 3, 1, 3},
      {"xor3", tt_xor(3), 3, 3, 3},
  };
  for (const auto& e : table) {
    const int lc1 = c1(e.f), lc0 = c0(e.f), lu = uc1(e.f);
    const int oc1 = oracles::c1(e.f), oc0 = oracles::c0(e.f), ou = oracles::uc1(e.f);
    if (lc1 != e.c1v || lc0 != e.c0v || lu != e.uc1v) {
      why = e.name + ": library values off";
      return false;
    }
    if (oc1 != e.c1v || oc0 != e.c0v || ou != e.uc1v) {
      why = e.name + ": oracle disagrees";
      return false;
    }
  }
  return true;
}

bool claim_bridge(std::string& why) {
  SplitMix64 rng(86);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng.below(6);  // up to 8
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.below(100) < 45) g.add_edge(u, v);

    const BpResult bp = bp_exact(g);
    if (!bp.optimal) {
      why = "bp budget exhausted at trial " + std::to_string(trial);
      return false;
    }
    if (g.edge_count() > 0) {
      const RectangleSet rects = rectangles_from_bicliques(g, bp.certificate);
      if (rects.rects.size() > 2 * bp.value ||
          !verify_rectangles(adjacency_matrix(g), rects)) {
        why = "rectangle bridge failed at trial " + std::to_string(trial);
        return false;
      }
    }

    const RankResult cover = boolean_rank(complement(adjacency_matrix(g)));
    if (!cover.optimal) {
      why = "cover budget exhausted at trial " + std::to_string(trial);
      return false;
    }
    const auto coloring = coloring_from_zero_cover(g, cover.certificate);
    if (!is_proper_coloring(g, coloring)) {
      why = "coloring not proper at trial " + std::to_string(trial);
      return false;
    }
    int colors = 0;
    for (int c : coloring) colors = std::max(colors, c + 1);
    if (static_cast<std::size_t>(colors) > cover.value) {
      why = "coloring uses too many colors at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"01 graham-pollak bp(K_n) = n-1, n = 2..5", 30.0, graham_pollak},
      {"02 gadget tables are 2^(ell-1)-regular, ell = 1..8", 1.0, gadget_regularity},
      {"03 discrepancy within 2^-((ell+3)/2), exact ell<=2, sampled ell<=4", 60.0,
       discrepancy_bounds},
      {"04 hadamard submatrix sums obey the sqrt bound, ell = 0..4", 60.0, lindsey},
      {"05 composed matrices regular with 2^((ell-1)n)|f^-1(1)| ones per row", 300.0,
       composition_regularity},
      {"06 Rbin >= Rbool and Rbin >= rank on all 3x3 plus 500 random 4x4", 300.0,
       rank_inequalities},
      {"07 real rank of regular matrices equals that of the complement", 30.0,
       complement_rank},
      {"08 lifted partitions verify and dominate the exact binary rank", 60.0,
       lifted_partitions},
      {"09 exactly-t-covered edges partition into at most (2k)^t bicliques", 120.0,
       t_covering_partitions},
      {"10 transform outputs verify on circulant and random regular inputs", 600.0,
       transform_end_to_end},
      {"11 certificate measures match the brute-force enumerator", 60.0,
       certificate_measures},
      {"12 biclique partitions and zero covers bridge to the adjacency matrix", 300.0,
       claim_bridge},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds > criterion.limit_seconds) {
      ok = false;
      why = "time limit exceeded";
    }
    std::printf("%s criterion %s (%.2f s%s)\n", ok ? "PASS" : "FAIL",
                criterion.name.c_str(), seconds, why.empty() ? "" : (", " + why).c_str());
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
