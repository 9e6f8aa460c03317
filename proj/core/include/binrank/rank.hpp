#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "binrank/matrix.hpp"

namespace binrank {

enum class RectKind { partition, cover };

/// A collection of rectangles certifying a rank value: a disjoint partition
/// of the ones for the binary rank, or a cover of the ones for the Boolean
/// rank.
struct RectangleSet {
  RectKind kind = RectKind::partition;
  std::vector<Rectangle> rects;
};

struct RankResult {
  std::size_t value = 0;
  RectangleSet certificate;
  bool optimal = false;
};

/// Default search-node budget for the exact solvers. Both problems are
/// NP-hard, so exhaustion is reported via RankResult::optimal instead of
/// letting runs grow without bound.
inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// True iff every rectangle of `s` is all-ones in `m`, the rectangles cover
/// exactly the ones of `m`, and, for kind == partition, no entry is covered
/// twice. Throws std::out_of_range for indices outside the matrix.
bool verify_rectangles(const BoolMatrix& m, const RectangleSet& s);

/// Minimum number of all-ones rectangles partitioning the ones of `m`.
/// When the search exceeds the node budget the best found upper bound is
/// returned with optimal == false; the certificate is always valid.
RankResult binary_rank(const BoolMatrix& m, std::size_t node_budget = kDefaultNodeBudget);

/// Minimum number of all-ones rectangles covering the ones of `m`.
RankResult boolean_rank(const BoolMatrix& m, std::size_t node_budget = kDefaultNodeBudget);

struct CcMeasures {
  std::size_t np = 0;    // ceil(log2 Rbool(M))
  std::size_t conp = 0;  // ceil(log2 Rbool(complement(M)))
  std::size_t up = 0;    // ceil(log2 Rbin(M))
  bool optimal = false;
};

CcMeasures cc_measures(const BoolMatrix& m, std::size_t node_budget = kDefaultNodeBudget);

/// ceil(log2 k) with the convention that k == 0 maps to 0.
std::size_t log2_ceil_or_zero(std::size_t k);

std::string rectangle_set_to_json(const RectangleSet& s);
RectangleSet rectangle_set_from_json(std::string_view text);

}  // namespace binrank
