#pragma once

#include <map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

// Internal: enumeration of formal concepts (maximal all-ones rectangles) of
// a boolean relation given row-wise as bitsets. Closed column sets are
// produced by intersecting one row at a time, which reaches every concept.

namespace binrank::detail {

using Bits = boost::dynamic_bitset<>;

struct ConceptRect {
  std::vector<std::size_t> rows;
  Bits cols;
};

inline std::vector<ConceptRect> all_concepts(const std::vector<Bits>& rowmask,
                                             std::size_t& nodes, std::size_t budget,
                                             bool& exhausted) {
  const std::size_t nrows = rowmask.size();
  std::map<Bits, std::vector<std::size_t>> seen;  // closed colmask -> row set

  auto rows_of = [&](const Bits& t) {
    std::vector<std::size_t> s;
    for (std::size_t r = 0; r < nrows; ++r)
      if (t.is_subset_of(rowmask[r])) s.push_back(r);
    return s;
  };

  std::vector<Bits> work;
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rowmask[r].none()) continue;
    if (seen.emplace(rowmask[r], rows_of(rowmask[r])).second) work.push_back(rowmask[r]);
  }
  while (!work.empty()) {
    Bits t = std::move(work.back());
    work.pop_back();
    for (std::size_t r = 0; r < nrows; ++r) {
      if (++nodes > budget) {
        exhausted = true;
        return {};
      }
      Bits t2 = t & rowmask[r];
      if (t2.none() || t2 == t) continue;
      if (seen.find(t2) != seen.end()) continue;
      seen.emplace(t2, rows_of(t2));
      work.push_back(std::move(t2));
    }
  }

  std::vector<ConceptRect> out;
  out.reserve(seen.size());
  for (auto& [t, s] : seen) out.push_back({std::move(s), t});
  return out;
}

}  // namespace binrank::detail
