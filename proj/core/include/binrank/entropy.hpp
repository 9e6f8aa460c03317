#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "binrank/arith.hpp"
#include "binrank/gadget.hpp"
#include "binrank/matrix.hpp"

namespace binrank {

/// Joint distribution of a pair (X, Y) over {0,1}^(ell*n) x {0,1}^(ell*n),
/// stored as exact rational weights on its support. Blocks follow the same
/// encoding as composed matrices: block 1 is most significant. The support
/// is bounded by enforcing ell * n <= 10.
struct BlockDistribution {
  int ell = 0;
  int blocks = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> weights;

  std::size_t domain_bits() const { return static_cast<std::size_t>(ell) * blocks; }
};

/// Throws unless the weights are nonnegative, sum to exactly 1, the support
/// is nonempty and indices fit in ell * n bits.
void validate_distribution(const BlockDistribution& d);

struct MinEntropy {
  Rational max_prob;  // exact
  double bits;        // -log2(max_prob), reported to double precision
};

/// Min-entropy of the joint distribution.
MinEntropy min_entropy(const BlockDistribution& d);

/// Min-entropy of a marginal or projected distribution given as weights.
MinEntropy min_entropy(const std::map<std::uint32_t, Rational>& weights);

std::map<std::uint32_t, Rational> marginal_x(const BlockDistribution& d);
std::map<std::uint32_t, Rational> marginal_y(const BlockDistribution& d);

/// Exact test of max_prob <= 2^(-bits) for rational bits, by cross
/// multiplication of integer powers. No floating point.
bool max_prob_entropy_at_least(const Rational& max_prob, const Rational& bits);

/// Projection of the pair onto a subset of blocks (1-based, sorted); the
/// result has n = blocks.size() with the same ell.
BlockDistribution project_blocks(const BlockDistribution& d, const std::vector<int>& blocks);

struct DensityCheck {
  bool dense = false;
  std::vector<int> violating_blocks;  // empty when dense
};

/// Density check: every non-empty block subset I must keep min-entropy at
/// least delta * 2 * ell * |I|. Enumerates all subsets; requires n <= 10.
DensityCheck is_delta_dense(const BlockDistribution& d, const Rational& delta);

/// Uniform distribution on the set of pairs mapped blockwise to z by the
/// gadget, optionally intersected with a rectangle. Throws when the fiber
/// (or the intersection) is empty.
BlockDistribution fiber_distribution(const Gadget& g, int blocks, std::uint32_t z,
                                     const std::optional<Rectangle>& rect = {});

/// Max over outcomes a of |P[g^S(X_S, Y_S) = a] - 2^(-|S|)|, exact.
Rational uniformity_gap(const BlockDistribution& d, const Gadget& g,
                        const std::vector<int>& s_blocks);

struct DenseRestriction {
  std::vector<int> fixed_blocks;                  // I, possibly empty
  std::pair<std::uint32_t, std::uint32_t> alpha;  // packed (x_I, y_I)
  BlockDistribution conditioned;                  // full pair, conditioned
};

/// Finds a maximum-size block set violating delta-density, conditions on
/// its most likely assignment, and checks that the projection onto the
/// remaining blocks is delta-dense. Already-dense inputs come back with an
/// empty fixed set.
DenseRestriction find_dense_restriction(const BlockDistribution& d, const Rational& delta);

/// Product of the two marginals: independent copies of X and Y.
BlockDistribution independent_product(const BlockDistribution& d);

/// Joint distribution of two independent pairs on concatenated blocks;
/// both inputs must share ell.
BlockDistribution block_product(const BlockDistribution& a, const BlockDistribution& b);

/// Conditioning on the event (X, Y) in rect. Throws when the event has
/// probability zero.
BlockDistribution condition_on_rectangle(const BlockDistribution& d, const Rectangle& rect);

}  // namespace binrank
