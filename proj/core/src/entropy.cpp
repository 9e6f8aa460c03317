#include "binrank/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace binrank {

namespace {

void check_shape(int ell, int blocks) {
  if (ell < 1 || blocks < 1 || ell * blocks > 10) {
    throw std::invalid_argument("BlockDistribution: need ell >= 1, n >= 1, ell*n <= 10");
  }
}

double log2_rational(const Rational& r) {
  const double num = static_cast<double>(numerator(r));
  const double den = static_cast<double>(denominator(r));
  return std::log2(num) - std::log2(den);
}

// Packs the projection of `bits` (ell*n wide, block 1 most significant)
// onto the 1-based blocks in `sel` (sorted), preserving block order.
std::uint32_t project_bits(std::uint32_t bits, int ell, int n, const std::vector<int>& sel) {
  std::uint32_t out = 0;
  for (int block : sel) {
    const std::uint32_t digit = (bits >> (ell * (n - block))) & ((1u << ell) - 1);
    out = (out << ell) | digit;
  }
  return out;
}

void check_block_list(const std::vector<int>& blocks, int n) {
  int prev = 0;
  for (int b : blocks) {
    if (b < 1 || b > n || b <= prev) {
      throw std::invalid_argument("block subset must be sorted, distinct, within [1, n]");
    }
    prev = b;
  }
}

}  // namespace

void validate_distribution(const BlockDistribution& d) {
  check_shape(d.ell, d.blocks);
  if (d.weights.empty()) throw std::invalid_argument("distribution has empty support");
  Rational total = 0;
  const std::uint32_t limit = 1u << d.domain_bits();
  for (const auto& [key, w] : d.weights) {
    if (key.first >= limit || key.second >= limit) {
      throw std::invalid_argument("distribution support outside the domain");
    }
    if (w < 0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("weights must sum to exactly 1");
}

MinEntropy min_entropy(const BlockDistribution& d) {
  if (d.weights.empty()) throw std::invalid_argument("min_entropy: empty support");
  Rational max_prob = 0;
  for (const auto& [key, w] : d.weights) max_prob = std::max(max_prob, w);
  return {max_prob, -log2_rational(max_prob)};
}

MinEntropy min_entropy(const std::map<std::uint32_t, Rational>& weights) {
  if (weights.empty()) throw std::invalid_argument("min_entropy: empty support");
  Rational max_prob = 0;
  for (const auto& [key, w] : weights) max_prob = std::max(max_prob, w);
  return {max_prob, -log2_rational(max_prob)};
}

std::map<std::uint32_t, Rational> marginal_x(const BlockDistribution& d) {
  std::map<std::uint32_t, Rational> out;
  for (const auto& [key, w] : d.weights) out[key.first] += w;
  return out;
}

std::map<std::uint32_t, Rational> marginal_y(const BlockDistribution& d) {
  std::map<std::uint32_t, Rational> out;
  for (const auto& [key, w] : d.weights) out[key.second] += w;
  return out;
}

bool max_prob_entropy_at_least(const Rational& max_prob, const Rational& bits) {
  // max_prob <= 2^(-bits)  <=>  max_prob^q * 2^p <= 1 for bits = p/q, q > 0.
  if (max_prob <= 0) return true;
  const BigInt p = numerator(bits);
  const BigInt q = denominator(bits);  // positive by construction
  const unsigned long qe = q.convert_to<unsigned long>();

  const BigInt num = numerator(max_prob);
  const BigInt den = denominator(max_prob);
  BigInt lhs_num = 1, lhs_den = 1;
  for (unsigned long i = 0; i < qe; ++i) {
    lhs_num *= num;
    lhs_den *= den;
  }
  if (p >= 0) {
    lhs_num <<= p.convert_to<unsigned long>();
  } else {
    lhs_den <<= (-p).convert_to<unsigned long>();
  }
  return lhs_num <= lhs_den;
}

BlockDistribution project_blocks(const BlockDistribution& d, const std::vector<int>& blocks) {
  check_block_list(blocks, d.blocks);
  if (blocks.empty()) throw std::invalid_argument("project_blocks: need at least one block");
  BlockDistribution out;
  out.ell = d.ell;
  out.blocks = static_cast<int>(blocks.size());
  for (const auto& [key, w] : d.weights) {
    const std::uint32_t x = project_bits(key.first, d.ell, d.blocks, blocks);
    const std::uint32_t y = project_bits(key.second, d.ell, d.blocks, blocks);
    out.weights[{x, y}] += w;
  }
  return out;
}

DensityCheck is_delta_dense(const BlockDistribution& d, const Rational& delta) {
  check_shape(d.ell, d.blocks);
  const int n = d.blocks;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sel;
    for (int b = 1; b <= n; ++b) {
      if (mask & (1u << (b - 1))) sel.push_back(b);
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> proj;
    for (const auto& [key, w] : d.weights) {
      proj[{project_bits(key.first, d.ell, n, sel),
            project_bits(key.second, d.ell, n, sel)}] += w;
    }
    Rational max_prob = 0;
    for (const auto& [key, w] : proj) max_prob = std::max(max_prob, w);
    const Rational required = delta * 2 * d.ell * static_cast<int>(sel.size());
    if (!max_prob_entropy_at_least(max_prob, required)) {
      return {false, sel};
    }
  }
  return {true, {}};
}

BlockDistribution fiber_distribution(const Gadget& g, int blocks, std::uint32_t z,
                                     const std::optional<Rectangle>& rect) {
  check_shape(g.ell, blocks);
  const int total_bits = g.ell * blocks;
  const std::uint32_t side = 1u << total_bits;
  const std::uint32_t block_mask = (1u << g.ell) - 1;
  if (z >= (1u << blocks)) throw std::invalid_argument("fiber_distribution: z out of range");

  std::vector<char> row_ok(side, 1), col_ok(side, 1);
  if (rect) {
    std::fill(row_ok.begin(), row_ok.end(), 0);
    std::fill(col_ok.begin(), col_ok.end(), 0);
    for (std::size_t r : rect->rows) row_ok.at(r) = 1;
    for (std::size_t c : rect->cols) col_ok.at(c) = 1;
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> support;
  for (std::uint32_t x = 0; x < side; ++x) {
    if (!row_ok[x]) continue;
    for (std::uint32_t y = 0; y < side; ++y) {
      if (!col_ok[y]) continue;
      bool match = true;
      for (int i = 1; i <= blocks && match; ++i) {
        const int shift = g.ell * (blocks - i);
        const bool want = (z >> (blocks - i)) & 1;
        match = g.value((x >> shift) & block_mask, (y >> shift) & block_mask) == want;
      }
      if (match) support.emplace_back(x, y);
    }
  }
  if (support.empty()) {
    throw std::invalid_argument("fiber_distribution: empty fiber");
  }

  BlockDistribution d;
  d.ell = g.ell;
  d.blocks = blocks;
  const Rational w(1, static_cast<long>(support.size()));
  for (const auto& key : support) d.weights[key] = w;
  return d;
}

Rational uniformity_gap(const BlockDistribution& d, const Gadget& g,
                        const std::vector<int>& s_blocks) {
  check_block_list(s_blocks, d.blocks);
  if (s_blocks.empty()) throw std::invalid_argument("uniformity_gap: need at least one block");
  if (g.ell != d.ell) throw std::invalid_argument("uniformity_gap: gadget and distribution disagree on ell");
  const std::size_t outcomes = std::size_t{1} << s_blocks.size();
  const std::uint32_t block_mask = (1u << d.ell) - 1;

  std::vector<Rational> prob(outcomes, 0);
  for (const auto& [key, w] : d.weights) {
    std::size_t a = 0;
    for (int block : s_blocks) {
      const int shift = d.ell * (d.blocks - block);
      const bool bit = g.value((key.first >> shift) & block_mask,
                               (key.second >> shift) & block_mask);
      a = (a << 1) | (bit ? 1 : 0);
    }
    prob[a] += w;
  }

  const Rational uniform(1, static_cast<long>(outcomes));
  Rational gap = 0;
  for (const Rational& p : prob) {
    const Rational diff = p >= uniform ? Rational(p - uniform) : Rational(uniform - p);
    if (diff > gap) gap = diff;
  }
  return gap;
}

DenseRestriction find_dense_restriction(const BlockDistribution& d, const Rational& delta) {
  validate_distribution(d);
  const int n = d.blocks;

  const DensityCheck base = is_delta_dense(d, delta);
  if (base.dense) {
    return {{}, {0, 0}, d};
  }

  // Maximum-size violating subset; ties break toward the smallest mask.
  std::vector<int> worst;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sel;
    for (int b = 1; b <= n; ++b) {
      if (mask & (1u << (b - 1))) sel.push_back(b);
    }
    if (sel.size() <= worst.size()) continue;
    const BlockDistribution proj = project_blocks(d, sel);
    const MinEntropy me = min_entropy(proj);
    const Rational required = delta * 2 * d.ell * static_cast<int>(sel.size());
    if (!max_prob_entropy_at_least(me.max_prob, required)) worst = sel;
  }

  // Most likely assignment to the violating blocks.
  const BlockDistribution proj = project_blocks(d, worst);
  std::pair<std::uint32_t, std::uint32_t> alpha{0, 0};
  Rational alpha_prob = -1;
  for (const auto& [key, w] : proj.weights) {
    if (w > alpha_prob) {
      alpha_prob = w;
      alpha = key;
    }
  }

  DenseRestriction out;
  out.fixed_blocks = worst;
  out.alpha = alpha;
  out.conditioned.ell = d.ell;
  out.conditioned.blocks = d.blocks;
  for (const auto& [key, w] : d.weights) {
    if (project_bits(key.first, d.ell, n, worst) != alpha.first) continue;
    if (project_bits(key.second, d.ell, n, worst) != alpha.second) continue;
    out.conditioned.weights[key] = w / alpha_prob;
  }

  if (static_cast<int>(worst.size()) < n) {
    std::vector<int> rest;
    for (int b = 1; b <= n; ++b) {
      if (!std::binary_search(worst.begin(), worst.end(), b)) rest.push_back(b);
    }
    const DensityCheck check = is_delta_dense(project_blocks(out.conditioned, rest), delta);
    if (!check.dense) {
      throw std::runtime_error("find_dense_restriction: no delta-dense restriction exists");
    }
  }
  return out;
}

BlockDistribution independent_product(const BlockDistribution& d) {
  BlockDistribution out;
  out.ell = d.ell;
  out.blocks = d.blocks;
  const auto mx = marginal_x(d);
  const auto my = marginal_y(d);
  for (const auto& [x, wx] : mx) {
    for (const auto& [y, wy] : my) {
      out.weights[{x, y}] = wx * wy;
    }
  }
  return out;
}

BlockDistribution block_product(const BlockDistribution& a, const BlockDistribution& b) {
  if (a.ell != b.ell) throw std::invalid_argument("block_product: mismatched ell");
  check_shape(a.ell, a.blocks + b.blocks);
  BlockDistribution out;
  out.ell = a.ell;
  out.blocks = a.blocks + b.blocks;
  const int bshift = b.ell * b.blocks;
  for (const auto& [ka, wa] : a.weights) {
    for (const auto& [kb, wb] : b.weights) {
      const std::uint32_t x = (ka.first << bshift) | kb.first;
      const std::uint32_t y = (ka.second << bshift) | kb.second;
      out.weights[{x, y}] = wa * wb;
    }
  }
  return out;
}

BlockDistribution condition_on_rectangle(const BlockDistribution& d, const Rectangle& rect) {
  std::vector<char> row_ok(1u << d.domain_bits(), 0), col_ok(1u << d.domain_bits(), 0);
  for (std::size_t r : rect.rows) row_ok.at(r) = 1;
  for (std::size_t c : rect.cols) col_ok.at(c) = 1;

  Rational mass = 0;
  for (const auto& [key, w] : d.weights) {
    if (row_ok[key.first] && col_ok[key.second]) mass += w;
  }
  if (mass == 0) {
    throw std::invalid_argument("condition_on_rectangle: event has probability zero");
  }
  BlockDistribution out;
  out.ell = d.ell;
  out.blocks = d.blocks;
  for (const auto& [key, w] : d.weights) {
    if (row_ok[key.first] && col_ok[key.second]) out.weights[key] = w / mass;
  }
  return out;
}

}  // namespace binrank
