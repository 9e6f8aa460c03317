#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binrank/graph.hpp"
#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"

namespace binrank {

/// Intermediate state of the matrix-to-graph pipeline: the pair graph H on
/// n^2 vertices (pair (i, j) is vertex i*n + j, loops exactly at the
/// one-cells of M), its 2-covering built from a rectangle partition, and
/// the two coverage layers of the loop-free part.
struct HGraphBundle {
  std::size_t n = 0;
  Graph h;                         // n^2 vertices, loops at the ones of M
  std::vector<std::size_t> v0;     // sorted vertex ids without loops
  std::vector<std::size_t> v1;     // sorted vertex ids with loops
  Graph h0;                        // induced on v0 (reindexed); simple
  BicliqueCovering covering;       // t = 2, one biclique per rectangle
  Graph h0_layer1;                 // edges of h0 covered exactly once
  Graph h0_layer2;                 // edges of h0 covered exactly twice
};

/// Graph part only: h, v0, v1, h0. The covering and layers stay empty.
HGraphBundle build_h(const BoolMatrix& m);

/// The 2-covering of H induced by a rectangle partition of the ones of M:
/// rectangle A x B becomes the biclique (rows in A) x (columns in B) over
/// pair vertices. Throws when the partition does not verify.
BicliqueCovering build_covering(const BoolMatrix& m, const RectangleSet& partition);

/// Splits the edges of h0 by coverage count (1 or 2); fills the layers.
void split_layers(HGraphBundle& bundle);

/// Convenience: build_h + build_covering + split_layers.
HGraphBundle build_bundle(const BoolMatrix& m, const RectangleSet& partition);

struct SolveBudgets {
  std::size_t rank_nodes = kDefaultNodeBudget;
};

struct TransformOutput {
  Graph g;
  int case_tag = 0;  // 1: two copies of the doubly-covered part; 2: cyclic
  BicliqueCovering bp_certificate;  // t = 1, a partition of the edges of g
  std::size_t chi_threshold = 0;    // ceil(m^(1/3))
  std::size_t k = 0;                // size of the rectangle partition used
  std::size_t m = 0;                // Boolean rank of the complement
  std::size_t degree = 0;           // d^2 (case 1) or 2nd (case 2)
  std::vector<std::array<std::size_t, 3>> vertex_map;  // vertex -> (i, j, copy)
};

/// Full pipeline: from a square d-regular matrix with 0 < d < n to a simple
/// regular graph with a verified biclique-partition certificate of size at
/// most 33k^2 (case 1) or 9k (case 2) and chromatic number at least
/// ceil(m^(1/3)). `supplied_m` skips the Boolean-rank solve on the
/// complement. Throws on precondition violations and budget exhaustion.
TransformOutput transform(const BoolMatrix& m, const SolveBudgets& budgets = {},
                          std::optional<std::size_t> supplied_m = {});

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TransformReport {
  bool pass = false;
  std::vector<CheckEntry> checks;
};

/// Re-checks a transform output against its input matrix: simplicity,
/// regularity with the case-appropriate degree, certificate validity and
/// size bound, and non-colorability with chi_threshold - 1 colors.
TransformReport verify_output(const BoolMatrix& m, const TransformOutput& out);

/// Case-2 assembly from an explicit independent set `s` of h0_layer2
/// (vertex ids of h). Exposed so the cyclic construction can be exercised
/// directly; `transform` calls it with a maximizing color class.
TransformOutput build_cyclic_output(const BoolMatrix& m, const HGraphBundle& bundle,
                                    const std::vector<std::size_t>& s, std::size_t m_value);

/// Case-1 assembly (two copies of the doubly-covered part).
TransformOutput build_two_copy_output(const BoolMatrix& m, const HGraphBundle& bundle,
                                      std::size_t m_value);

/// Rectangle cover of the zeros of M read off a proper coloring of h0
/// (indices follow bundle.v0). One rectangle per color class.
RectangleSet zero_cover_from_h0_coloring(const BoolMatrix& m, const HGraphBundle& bundle,
                                         const std::vector<int>& h0_coloring);

/// Smallest T with T^3 >= value; 0 for value 0.
std::size_t ceil_cube_root(std::size_t value);

std::string transform_output_to_json(const TransformOutput& out);
TransformOutput transform_output_from_json(std::string_view text);

}  // namespace binrank
