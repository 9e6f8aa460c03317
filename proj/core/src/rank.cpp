#include "binrank/rank.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "concept_enum.hpp"

namespace binrank {

namespace {

using Bits = boost::dynamic_bitset<>;

std::vector<Bits> ones_by_row(const BoolMatrix& m) {
  std::vector<Bits> rows(m.rows(), Bits(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) rows[r].set(c);
  return rows;
}

std::vector<std::size_t> sorted_unique(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out = v;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> mask_to_indices(const Bits& mask) {
  std::vector<std::size_t> out;
  out.reserve(mask.count());
  for (std::size_t c = mask.find_first(); c != Bits::npos; c = mask.find_next(c)) {
    out.push_back(c);
  }
  return out;
}

void canonicalize(RectangleSet& s) {
  for (auto& r : s.rects) {
    std::sort(r.rows.begin(), r.rows.end());
    std::sort(r.cols.begin(), r.cols.end());
  }
  std::sort(s.rects.begin(), s.rects.end(), [](const Rectangle& a, const Rectangle& b) {
    if (a.rows != b.rows) return a.rows < b.rows;
    return a.cols < b.cols;
  });
}

// Rank over Q of the 0/1 indicator of `free`, used as a lower bound: any
// partition of the free cells into rectangles is a binary factorization of
// that indicator matrix. Bareiss with __int128 products; exact for sides
// up to two dozen.
std::size_t indicator_rank(const std::vector<Bits>& free, std::size_t ncols) {
  const std::size_t n = free.size();
  std::vector<std::vector<long long>> a(n, std::vector<long long>(ncols, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = free[r].find_first(); c != Bits::npos; c = free[r].find_next(c))
      a[r][c] = 1;

  std::size_t rank = 0;
  long long prev = 1;
  for (std::size_t col = 0; col < ncols && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      for (std::size_t c = col + 1; c < ncols; ++c) {
        const __int128 num =
            static_cast<__int128>(a[rank][col]) * a[r][c] - static_cast<__int128>(a[r][col]) * a[rank][c];
        a[r][c] = static_cast<long long>(num / prev);
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

// Greedy fooling set over the free cells: no two chosen cells fit in a
// common all-ones rectangle inside `free`, so any partition needs at least
// one rectangle per chosen cell.
std::size_t fooling_bound_partition(const std::vector<Bits>& free) {
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  for (std::size_t r = 0; r < free.size(); ++r) {
    for (std::size_t c = free[r].find_first(); c != Bits::npos; c = free[r].find_next(c)) {
      bool independent = true;
      for (const auto& [r2, c2] : chosen) {
        if (r == r2 || c == c2 || (free[r].test(c2) && free[r2].test(c))) {
          independent = false;
          break;
        }
      }
      if (independent) chosen.emplace_back(r, c);
    }
  }
  return chosen.size();
}

struct BinRankSearch {
  std::size_t nrows = 0, ncols = 0;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  bool exhausted = false;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<Rectangle> best_rects;
  std::vector<Rectangle> current;

  struct Cand {
    std::vector<std::size_t> rows;
    Bits cols;
    std::size_t cells = 0;
  };

  bool spend() {
    if (++nodes > budget) exhausted = true;
    return !exhausted;
  }

  static std::pair<std::size_t, std::size_t> first_free(const std::vector<Bits>& free) {
    for (std::size_t r = 0; r < free.size(); ++r) {
      const std::size_t c = free[r].find_first();
      if (c != Bits::npos) return {r, c};
    }
    return {free.size(), 0};
  }

  // Every rectangle (S, T) with r0 in S, c0 in T and S x T inside free.
  void generate(const std::vector<Bits>& free, std::size_t r0, std::size_t c0,
                std::vector<Cand>& out) {
    std::vector<std::size_t> rows_avail;
    for (std::size_t r = r0 + 1; r < nrows; ++r)
      if (free[r].test(c0)) rows_avail.push_back(r);

    std::vector<std::size_t> s{r0};

    auto emit = [&](const Bits& common) {
      std::vector<std::size_t> opt_cols;
      for (std::size_t c = common.find_first(); c != Bits::npos; c = common.find_next(c))
        if (c != c0) opt_cols.push_back(c);
      if (opt_cols.size() >= 40) {  // 2^40 subsets dwarf any budget
        exhausted = true;
        return;
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << opt_cols.size()); ++mask) {
        if (!spend()) return;
        Bits t(ncols);
        t.set(c0);
        for (std::size_t b = 0; b < opt_cols.size(); ++b)
          if (mask & (std::uint64_t{1} << b)) t.set(opt_cols[b]);
        out.push_back({s, t, s.size() * t.count()});
      }
    };

    auto rec = [&](auto&& self, std::size_t idx, const Bits& common) -> void {
      if (exhausted) return;
      emit(common);
      for (std::size_t k = idx; k < rows_avail.size() && !exhausted; ++k) {
        s.push_back(rows_avail[k]);
        self(self, k + 1, common & free[rows_avail[k]]);
        s.pop_back();
      }
    };
    rec(rec, 0, free[r0]);
  }

  // One large rectangle through (r0, c0), grown greedily by cell count.
  Cand greedy_rect(const std::vector<Bits>& free, std::size_t r0, std::size_t c0) const {
    std::vector<std::size_t> s{r0};
    Bits t = free[r0];
    std::vector<char> in_s(nrows, 0);
    in_s[r0] = 1;
    for (;;) {
      std::size_t cur = s.size() * t.count();
      std::size_t best_row = nrows;
      std::size_t best_cells = cur;
      Bits best_mask;
      for (std::size_t r = r0 + 1; r < nrows; ++r) {
        if (in_s[r] || !free[r].test(c0)) continue;
        Bits cand = t & free[r];
        const std::size_t cells = (s.size() + 1) * cand.count();
        if (cells > best_cells) {
          best_cells = cells;
          best_row = r;
          best_mask = std::move(cand);
        }
      }
      if (best_row == nrows) break;
      in_s[best_row] = 1;
      s.push_back(best_row);
      t = std::move(best_mask);
    }
    std::sort(s.begin(), s.end());
    return {std::move(s), std::move(t), 0};
  }

  void apply(std::vector<Bits>& free, const Cand& cand, bool on) const {
    for (std::size_t r : cand.rows) {
      if (on)
        free[r] -= cand.cols;
      else
        free[r] |= cand.cols;
    }
  }

  void greedy_initial(std::vector<Bits> free, std::size_t ones_left) {
    std::vector<Rectangle> acc;
    while (ones_left > 0) {
      const auto [r0, c0] = first_free(free);
      Cand cand = greedy_rect(free, r0, c0);
      const std::size_t cells = cand.rows.size() * cand.cols.count();
      apply(free, cand, true);
      acc.push_back({cand.rows, mask_to_indices(cand.cols)});
      ones_left -= cells;
    }
    best = acc.size();
    best_rects = std::move(acc);
  }

  std::size_t lower_bound(const std::vector<Bits>& free) const {
    std::size_t lb = fooling_bound_partition(free);
    if (nrows <= 24 && ncols <= 24) {
      lb = std::max(lb, indicator_rank(free, ncols));
    }
    return lb;
  }

  void search(std::vector<Bits>& free, std::size_t ones_left) {
    if (exhausted) return;
    if (ones_left == 0) {
      if (current.size() < best) {
        best = current.size();
        best_rects = current;
      }
      return;
    }
    if (current.size() + 1 >= best) return;
    if (current.size() + lower_bound(free) >= best) return;

    const auto [r0, c0] = first_free(free);
    std::vector<Cand> cands;
    generate(free, r0, c0, cands);
    if (exhausted) return;

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.cells != b.cells) return a.cells > b.cells;
      if (a.rows != b.rows) return a.rows < b.rows;
      return a.cols < b.cols;
    });

    for (const Cand& cand : cands) {
      if (current.size() + 1 >= best) return;
      if (!spend()) return;
      apply(free, cand, true);
      current.push_back({cand.rows, mask_to_indices(cand.cols)});
      search(free, ones_left - cand.cells);
      current.pop_back();
      apply(free, cand, false);
      if (exhausted) return;
    }
  }
};

// ---- Boolean rank -----------------------------------------------------

using MaxRect = detail::ConceptRect;

std::size_t fooling_bound_cover(const BoolMatrix& m, const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                                const Bits& covered) {
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (covered.test(i)) continue;
    const auto [r, c] = cells[i];
    bool independent = true;
    for (const auto& [r2, c2] : chosen) {
      if (r == r2 || c == c2 || (m.get(r, c2) && m.get(r2, c))) {
        independent = false;
        break;
      }
    }
    if (independent) chosen.emplace_back(r, c);
  }
  return chosen.size();
}

struct CoverSearch {
  const BoolMatrix& m;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::vector<MaxRect> rects;
  std::vector<Bits> rect_cells;                  // per rect, mask over cells
  std::vector<std::vector<std::size_t>> covers;  // per cell, rect indices

  std::size_t budget = 0;
  std::size_t nodes = 0;
  bool exhausted = false;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> current;

  explicit CoverSearch(const BoolMatrix& mat) : m(mat) {}

  bool spend() {
    if (++nodes > budget) exhausted = true;
    return !exhausted;
  }

  void greedy_initial() {
    Bits covered(cells.size());
    std::vector<std::size_t> pick;
    while (covered.count() < cells.size()) {
      std::size_t best_idx = 0, best_gain = 0;
      for (std::size_t i = 0; i < rects.size(); ++i) {
        const std::size_t gain = (rect_cells[i] - covered).count();
        if (gain > best_gain) {
          best_gain = gain;
          best_idx = i;
        }
      }
      covered |= rect_cells[best_idx];
      pick.push_back(best_idx);
    }
    best = pick.size();
    best_pick = std::move(pick);
  }

  void search(Bits& covered) {
    if (exhausted) return;
    if (covered.count() == cells.size()) {
      if (current.size() < best) {
        best = current.size();
        best_pick = current;
      }
      return;
    }
    if (current.size() + 1 >= best) return;
    if (current.size() + fooling_bound_cover(m, cells, covered) >= best) return;

    // Branch on the uncovered cell with the fewest covering rectangles.
    std::size_t cell = cells.size();
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (covered.test(i)) continue;
      if (covers[i].size() < fewest) {
        fewest = covers[i].size();
        cell = i;
      }
    }

    std::vector<std::size_t> order = covers[cell];
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const std::size_t ga = (rect_cells[a] - covered).count();
      const std::size_t gb = (rect_cells[b] - covered).count();
      if (ga != gb) return ga > gb;
      return a < b;
    });

    for (std::size_t idx : order) {
      if (current.size() + 1 >= best) return;
      if (!spend()) return;
      Bits saved = covered;
      covered |= rect_cells[idx];
      current.push_back(idx);
      search(covered);
      current.pop_back();
      covered = std::move(saved);
      if (exhausted) return;
    }
  }
};

}  // namespace

bool verify_rectangles(const BoolMatrix& m, const RectangleSet& s) {
  std::vector<unsigned> count(m.rows() * m.cols(), 0);
  for (const auto& rect : s.rects) {
    const auto rows = sorted_unique(rect.rows);
    const auto cols = sorted_unique(rect.cols);
    if (rows.empty() || cols.empty()) return false;
    if (rows.back() >= m.rows() || cols.back() >= m.cols()) {
      throw std::out_of_range("verify_rectangles: rectangle index outside matrix");
    }
    for (std::size_t r : rows) {
      for (std::size_t c : cols) {
        if (!m.get(r, c)) return false;
        ++count[r * m.cols() + c];
      }
    }
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const unsigned k = count[r * m.cols() + c];
      if (!m.get(r, c)) {
        if (k != 0) return false;
      } else if (s.kind == RectKind::partition) {
        if (k != 1) return false;
      } else {
        if (k == 0) return false;
      }
    }
  }
  return true;
}

RankResult binary_rank(const BoolMatrix& m, std::size_t node_budget) {
  RankResult result;
  result.certificate.kind = RectKind::partition;

  const std::size_t ones = m.ones_count();
  if (ones == 0) {
    result.optimal = true;
    return result;
  }

  BinRankSearch search;
  search.nrows = m.rows();
  search.ncols = m.cols();
  search.budget = node_budget == 0 ? std::numeric_limits<std::size_t>::max() : node_budget;

  std::vector<Bits> free = ones_by_row(m);
  search.greedy_initial(free, ones);
  search.search(free, ones);

  result.value = search.best;
  result.certificate.rects = std::move(search.best_rects);
  result.optimal = !search.exhausted;
  canonicalize(result.certificate);
  return result;
}

RankResult boolean_rank(const BoolMatrix& m, std::size_t node_budget) {
  RankResult result;
  result.certificate.kind = RectKind::cover;

  if (m.ones_count() == 0) {
    result.optimal = true;
    return result;
  }

  CoverSearch search(m);
  search.budget = node_budget == 0 ? std::numeric_limits<std::size_t>::max() : node_budget;

  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) search.cells.emplace_back(r, c);

  std::vector<Bits> rowmask = ones_by_row(m);
  auto maximal = detail::all_concepts(rowmask, search.nodes, search.budget, search.exhausted);
  if (search.exhausted) {
    // Could not even enumerate candidate rectangles: cover cell by cell.
    for (const auto& [r, c] : search.cells) {
      result.certificate.rects.push_back({{r}, {c}});
    }
    result.value = result.certificate.rects.size();
    result.optimal = false;
    canonicalize(result.certificate);
    return result;
  }
  search.rects = std::move(maximal);

  search.rect_cells.assign(search.rects.size(), Bits(search.cells.size()));
  search.covers.assign(search.cells.size(), {});
  for (std::size_t i = 0; i < search.rects.size(); ++i) {
    for (std::size_t r : search.rects[i].rows) {
      for (std::size_t c = search.rects[i].cols.find_first(); c != Bits::npos;
           c = search.rects[i].cols.find_next(c)) {
        const auto it = std::lower_bound(search.cells.begin(), search.cells.end(),
                                         std::make_pair(r, c));
        const std::size_t idx = static_cast<std::size_t>(it - search.cells.begin());
        search.rect_cells[i].set(idx);
        search.covers[idx].push_back(i);
      }
    }
  }

  search.greedy_initial();
  Bits covered(search.cells.size());
  search.search(covered);

  result.value = search.best;
  for (std::size_t idx : search.best_pick) {
    result.certificate.rects.push_back(
        {search.rects[idx].rows, mask_to_indices(search.rects[idx].cols)});
  }
  result.optimal = !search.exhausted;
  canonicalize(result.certificate);
  return result;
}

std::size_t log2_ceil_or_zero(std::size_t k) {
  if (k <= 1) return 0;
  std::size_t bits = 0;
  std::size_t v = k - 1;
  while (v > 0) {
    v >>= 1;
    ++bits;
  }
  return bits;
}

CcMeasures cc_measures(const BoolMatrix& m, std::size_t node_budget) {
  const RankResult np_rank = boolean_rank(m, node_budget);
  const RankResult conp_rank = boolean_rank(complement(m), node_budget);
  const RankResult up_rank = binary_rank(m, node_budget);
  CcMeasures out;
  out.np = log2_ceil_or_zero(np_rank.value);
  out.conp = log2_ceil_or_zero(conp_rank.value);
  out.up = log2_ceil_or_zero(up_rank.value);
  out.optimal = np_rank.optimal && conp_rank.optimal && up_rank.optimal;
  return out;
}

std::string rectangle_set_to_json(const RectangleSet& s) {
  nlohmann::json j;
  j["kind"] = s.kind == RectKind::partition ? "partition" : "cover";
  nlohmann::json rects = nlohmann::json::array();
  for (const auto& r : s.rects) {
    rects.push_back({{"rows", r.rows}, {"cols", r.cols}});
  }
  j["rects"] = std::move(rects);
  return j.dump();
}

RectangleSet rectangle_set_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RectangleSet s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "partition") {
    s.kind = RectKind::partition;
  } else if (kind == "cover") {
    s.kind = RectKind::cover;
  } else {
    throw std::invalid_argument("rectangle set: kind must be 'partition' or 'cover'");
  }
  for (const auto& r : j.at("rects")) {
    Rectangle rect;
    rect.rows = r.at("rows").get<std::vector<std::size_t>>();
    rect.cols = r.at("cols").get<std::vector<std::size_t>>();
    s.rects.push_back(std::move(rect));
  }
  return s;
}

}  // namespace binrank
