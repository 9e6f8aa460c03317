#include "binrank/gadget.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "binrank/rng.hpp"

namespace binrank {

namespace {

void check_ell(int ell, int min_ell) {
  if (ell < min_ell || ell > 20) {
    throw std::invalid_argument("gadget: block length out of range");
  }
}

// Signed colsum evaluation: the best rectangle for a fixed row set takes
// every column whose conditional imbalance has the majority sign.
long long best_column_imbalance(const std::vector<long long>& colsum) {
  long long pos = 0, neg = 0;
  for (long long v : colsum) {
    if (v > 0)
      pos += v;
    else
      neg += v;
  }
  return std::max(pos, -neg);
}

}  // namespace

Gadget gadget_gl(int ell) {
  check_ell(ell, 1);
  const std::size_t side = std::size_t{1} << ell;
  const std::size_t low = (side >> 1) - 1;  // bits 2..ell
  Gadget g{ell, BoolMatrix(side, side)};
  for (std::size_t x = 0; x < side; ++x) {
    const std::size_t x1 = x >> (ell - 1);
    for (std::size_t y = 0; y < side; ++y) {
      const std::size_t y1 = y >> (ell - 1);
      const std::size_t inner = std::popcount(x & y & low);
      g.table.set(x, y, (x1 ^ y1 ^ inner) & 1);
    }
  }
  return g;
}

Gadget gadget_ip(int ell) {
  check_ell(ell, 1);
  const std::size_t side = std::size_t{1} << ell;
  Gadget g{ell, BoolMatrix(side, side)};
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y) g.table.set(x, y, std::popcount(x & y) & 1);
  return g;
}

bool is_strongly_unbiased(const Gadget& g) {
  const auto d = is_regular(g.table);
  return d.has_value() && *d == g.side() / 2;
}

BoolMatrix compose(const TruthTable& f, const Gadget& g, std::size_t side_cap) {
  const int n = f.vars();
  const int ell = g.ell;
  if (n < 1) throw std::invalid_argument("compose: f needs at least one variable");
  if (ell * n > 40 || (std::size_t{1} << (ell * n)) > side_cap) {
    throw std::invalid_argument("compose: 2^(ell*n) exceeds the size cap");
  }
  const std::size_t side = std::size_t{1} << (ell * n);
  const std::size_t block_mask = (std::size_t{1} << ell) - 1;

  BoolMatrix m(side, side);
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t y = 0; y < side; ++y) {
      std::size_t z = 0;
      for (int i = 1; i <= n; ++i) {
        const int shift = ell * (n - i);
        const std::size_t xb = (x >> shift) & block_mask;
        const std::size_t yb = (y >> shift) & block_mask;
        if (g.value(xb, yb)) z |= std::size_t{1} << (n - i);
      }
      if (f.value(z)) m.set(x, y, true);
    }
  }
  return m;
}

namespace {

// Recursive include/exclude over rows; evaluates every row subset once.
long long scan_subsets(const std::vector<std::vector<long long>>& weight, std::size_t row,
                       std::vector<long long>& colsum) {
  if (row == weight.size()) return best_column_imbalance(colsum);
  long long best = scan_subsets(weight, row + 1, colsum);
  for (std::size_t c = 0; c < colsum.size(); ++c) colsum[c] += weight[row][c];
  best = std::max(best, scan_subsets(weight, row + 1, colsum));
  for (std::size_t c = 0; c < colsum.size(); ++c) colsum[c] -= weight[row][c];
  return best;
}

std::vector<std::vector<long long>> sign_weights(const Gadget& g) {
  const std::size_t side = g.side();
  std::vector<std::vector<long long>> weight(side, std::vector<long long>(side));
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y) weight[x][y] = g.value(x, y) ? -1 : 1;
  return weight;
}

}  // namespace

Rational discrepancy_exact(const Gadget& g, bool parallel) {
  const std::size_t side = g.side();
  if (side > 16) {
    throw std::invalid_argument("discrepancy_exact: side must be at most 16");
  }
  const auto weight = sign_weights(g);

  long long best = 0;
  if (!parallel || side < 8) {
    std::vector<long long> colsum(side, 0);
    best = scan_subsets(weight, 0, colsum);
  } else {
    // Fix the first rows across tasks; the max is order-independent.
    const unsigned tasks = 8;
    std::vector<std::future<long long>> futures;
    for (unsigned prefix = 0; prefix < tasks; ++prefix) {
      futures.push_back(std::async(std::launch::async, [&, prefix]() {
        std::vector<long long> colsum(side, 0);
        for (std::size_t r = 0; r < 3; ++r) {
          if (prefix & (1u << r)) {
            for (std::size_t c = 0; c < side; ++c) colsum[c] += weight[r][c];
          }
        }
        return scan_subsets(weight, 3, colsum);
      }));
    }
    for (auto& f : futures) best = std::max(best, f.get());
  }
  return Rational(best, BigInt(1) << (2 * g.ell));
}

Rational discrepancy_sample(const Gadget& g, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("discrepancy_sample: trials must be positive");
  const std::size_t side = g.side();
  const auto weight = sign_weights(g);
  SplitMix64 rng(mix_seed(seed, side));

  long long best = 0;
  std::vector<char> in_set(side);
  std::vector<long long> colsum(side);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t r = 0; r < side; ++r) in_set[r] = rng.coin();
    std::fill(colsum.begin(), colsum.end(), 0);
    for (std::size_t r = 0; r < side; ++r) {
      if (!in_set[r]) continue;
      for (std::size_t c = 0; c < side; ++c) colsum[c] += weight[r][c];
    }
    long long cur = best_column_imbalance(colsum);
    // Hill climb on row flips until no single flip improves.
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t r = 0; r < side; ++r) {
        const int sign = in_set[r] ? -1 : 1;
        for (std::size_t c = 0; c < side; ++c) colsum[c] += sign * weight[r][c];
        const long long with_flip = best_column_imbalance(colsum);
        if (with_flip > cur) {
          cur = with_flip;
          in_set[r] = !in_set[r];
          improved = true;
        } else {
          for (std::size_t c = 0; c < side; ++c) colsum[c] -= sign * weight[r][c];
        }
      }
    }
    best = std::max(best, cur);
  }
  return Rational(best, BigInt(1) << (2 * g.ell));
}

bool within_discrepancy_bound(const Rational& disc, int ell) {
  return disc * disc <= pow2(-(ell + 3));
}

SignMatrix hadamard(int ell) {
  check_ell(ell, 0);
  const std::size_t side = std::size_t{1} << ell;
  SignMatrix h{side, std::vector<std::int8_t>(side * side)};
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y)
      h.entries[x * side + y] = std::popcount(x & y) % 2 == 0 ? 1 : -1;
  return h;
}

bool is_hadamard(const SignMatrix& h) {
  const std::size_t n = h.side;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      long long row_dot = 0, col_dot = 0;
      for (std::size_t c = 0; c < n; ++c) {
        row_dot += h.get(a, c) * h.get(b, c);
        col_dot += h.get(c, a) * h.get(c, b);
      }
      if (row_dot != 0 || col_dot != 0) return false;
    }
  }
  return true;
}

namespace {

// Checks every column-count s for one fixed row subset: with colsums sorted,
// the extreme s-column sums are the prefix of the largest and of the
// smallest values.
bool lindsey_row_subset(const std::vector<long long>& colsum, std::size_t rows_taken,
                        std::size_t side) {
  std::vector<long long> sorted = colsum;
  std::sort(sorted.begin(), sorted.end());
  long long low = 0, high = 0;
  for (std::size_t s = 1; s <= side; ++s) {
    low += sorted[s - 1];
    high += sorted[side - s];
    const long long budget = static_cast<long long>(rows_taken * s * side);
    if (low * low > budget || high * high > budget) return false;
  }
  return true;
}

bool lindsey_scan(const SignMatrix& h, std::size_t row, std::size_t taken,
                  std::vector<long long>& colsum) {
  if (row == h.side) {
    return taken == 0 || lindsey_row_subset(colsum, taken, h.side);
  }
  if (!lindsey_scan(h, row + 1, taken, colsum)) return false;
  for (std::size_t c = 0; c < h.side; ++c) colsum[c] += h.get(row, c);
  const bool ok = lindsey_scan(h, row + 1, taken + 1, colsum);
  for (std::size_t c = 0; c < h.side; ++c) colsum[c] -= h.get(row, c);
  return ok;
}

}  // namespace

bool lindsey_check(const SignMatrix& h) {
  if (h.side > 16) throw std::invalid_argument("lindsey_check: side must be at most 16");
  if (!is_hadamard(h)) throw std::invalid_argument("lindsey_check: input is not Hadamard");
  std::vector<long long> colsum(h.side, 0);
  return lindsey_scan(h, 0, 0, colsum);
}

RectangleSet lifted_partition(const Dnf& phi, const Gadget& g, std::size_t side_cap) {
  if (!phi.unambiguous) {
    throw std::invalid_argument("lifted_partition: the DNF must be flagged unambiguous");
  }
  const TruthTable f = evaluate_dnf(phi);
  if (!verify_dnf(f, phi)) {
    throw std::invalid_argument("lifted_partition: the DNF is not unambiguous");
  }
  const int n = phi.vars;
  const int ell = g.ell;
  if (ell * n > 40 || (std::size_t{1} << (ell * n)) > side_cap) {
    throw std::invalid_argument("lifted_partition: composed matrix exceeds the size cap");
  }
  const std::size_t block_mask = (std::size_t{1} << ell) - 1;

  RectangleSet out;
  out.kind = RectKind::partition;

  for (const auto& clause : phi.clauses) {
    const std::size_t w = clause.literals.size();
    std::vector<int> vars, need;
    for (const auto& [var, val] : clause.literals) {
      vars.push_back(var);
      need.push_back(val);
    }
    std::vector<int> free_blocks;
    {
      std::vector<char> fixed(n + 1, 0);
      for (int v : vars) fixed[v] = 1;
      for (int v = 1; v <= n; ++v)
        if (!fixed[v]) free_blocks.push_back(v);
    }

    const std::size_t assignments = std::size_t{1} << (ell * w);
    const std::size_t completions = std::size_t{1} << (ell * free_blocks.size());

    for (std::size_t alpha = 0; alpha < assignments; ++alpha) {
      for (std::size_t beta = 0; beta < assignments; ++beta) {
        bool accepted = true;
        for (std::size_t j = 0; j < w && accepted; ++j) {
          const int shift = ell * static_cast<int>(w - 1 - j);
          const std::size_t xb = (alpha >> shift) & block_mask;
          const std::size_t yb = (beta >> shift) & block_mask;
          accepted = g.value(xb, yb) == (need[j] == 1);
        }
        if (!accepted) continue;

        // Rows fix the alpha blocks, columns the beta blocks; the other
        // blocks range over everything.
        auto build = [&](std::size_t fixed_bits) {
          std::vector<std::size_t> indices;
          indices.reserve(completions);
          std::size_t base = 0;
          for (std::size_t j = 0; j < w; ++j) {
            const std::size_t digit = (fixed_bits >> (ell * (w - 1 - j))) & block_mask;
            base |= digit << (ell * (n - vars[j]));
          }
          for (std::size_t u = 0; u < completions; ++u) {
            std::size_t idx = base;
            for (std::size_t j = 0; j < free_blocks.size(); ++j) {
              const std::size_t digit =
                  (u >> (ell * (free_blocks.size() - 1 - j))) & block_mask;
              idx |= digit << (ell * (n - free_blocks[j]));
            }
            indices.push_back(idx);
          }
          std::sort(indices.begin(), indices.end());
          return indices;
        };

        Rectangle rect{build(alpha), build(beta)};
        if (!rect.rows.empty() && !rect.cols.empty()) out.rects.push_back(std::move(rect));
      }
    }
  }
  return out;
}

std::string serialize_gadget(const Gadget& g) {
  return "# ell=" + std::to_string(g.ell) + "\n" + serialize_matrix(g.table);
}

Gadget parse_gadget(std::string_view text) {
  int ell = -1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.rfind("# ell=", 0) == 0) {
      ell = std::stoi(std::string(line.substr(6)));
      break;
    }
    if (!line.empty() && line.front() != '#') break;
  }

  const BoolMatrix table = parse_matrix(text);
  if (table.rows() != table.cols()) {
    throw std::invalid_argument("gadget table must be square");
  }
  if (ell < 0) {
    std::size_t side = table.rows();
    ell = 0;
    while ((std::size_t{1} << ell) < side) ++ell;
  }
  if ((std::size_t{1} << ell) != table.rows()) {
    throw std::invalid_argument("gadget table side must be 2^ell");
  }
  return Gadget{ell, table};
}

Gadget read_gadget_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open gadget file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gadget(buf.str());
}

}  // namespace binrank
