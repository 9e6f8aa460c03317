#include <doctest.h>

#include "binrank/entropy.hpp"
#include "binrank/gadget.hpp"

using namespace binrank;

namespace {

BlockDistribution uniform_pairs(int ell, int blocks) {
  BlockDistribution d;
  d.ell = ell;
  d.blocks = blocks;
  const std::uint32_t side = 1u << (ell * blocks);
  const Rational w(1, BigInt(side) * side);
  for (std::uint32_t x = 0; x < side; ++x)
    for (std::uint32_t y = 0; y < side; ++y) d.weights[{x, y}] = w;
  return d;
}

BlockDistribution point_mass(int ell, int blocks, std::uint32_t x, std::uint32_t y) {
  BlockDistribution d;
  d.ell = ell;
  d.blocks = blocks;
  d.weights[{x, y}] = 1;
  return d;
}

}  // namespace

TEST_CASE("min_entropy on pinned distributions") {
  // Uniform over the 2-point parity fiber: one bit of min-entropy.
  const BlockDistribution fiber = fiber_distribution(gadget_gl(1), 1, 0);
  CHECK(fiber.weights.size() == 2);
  const MinEntropy me = min_entropy(fiber);
  CHECK(me.max_prob == Rational(1, 2));
  CHECK(me.bits == doctest::Approx(1.0));

  const MinEntropy point = min_entropy(point_mass(1, 1, 0, 1));
  CHECK(point.max_prob == 1);
  CHECK(point.bits == doctest::Approx(0.0));

  const MinEntropy uniform = min_entropy(uniform_pairs(1, 2));
  CHECK(uniform.max_prob == Rational(1, 16));
  CHECK(uniform.bits == doctest::Approx(4.0));
}

TEST_CASE("exact entropy comparisons cross-multiply") {
  CHECK(max_prob_entropy_at_least(Rational(1, 2), Rational(1)));
  CHECK_FALSE(max_prob_entropy_at_least(Rational(1, 2), Rational(3, 2)));
  CHECK(max_prob_entropy_at_least(Rational(1, 8), Rational(3)));
  CHECK(max_prob_entropy_at_least(Rational(1, 3), Rational(3, 2)));   // 1/3 <= 2^-1.5
  CHECK_FALSE(max_prob_entropy_at_least(Rational(1, 2), Rational(7, 4)));
}

TEST_CASE("density checks on pinned distributions") {
  CHECK(is_delta_dense(uniform_pairs(1, 2), Rational(1)).dense);
  CHECK(is_delta_dense(uniform_pairs(2, 2), Rational(1, 2)).dense);

  const DensityCheck point = is_delta_dense(point_mass(1, 2, 0, 0), Rational(1, 4));
  CHECK_FALSE(point.dense);
  CHECK(point.violating_blocks == std::vector<int>{1});

  // Uniform over the diagonal fiber of the 1-bit parity gadget at z = 00:
  // one bit per block, dense exactly up to delta = 1/2.
  const BlockDistribution fiber = fiber_distribution(gadget_gl(1), 2, 0b00);
  CHECK(fiber.weights.size() == 4);
  CHECK(is_delta_dense(fiber, Rational(1, 2)).dense);
  CHECK_FALSE(is_delta_dense(fiber, Rational(3, 5)).dense);
}

TEST_CASE("fiber distributions enumerate the right supports") {
  const BlockDistribution odd = fiber_distribution(gadget_gl(1), 1, 1);
  CHECK(odd.weights.size() == 2);
  CHECK(odd.weights.count({0, 1}) == 1);
  CHECK(odd.weights.count({1, 0}) == 1);

  const BlockDistribution mixed = fiber_distribution(gadget_gl(1), 2, 0b01);
  CHECK(mixed.weights.size() == 4);

  // Intersecting with the full rectangle changes nothing.
  Rectangle full;
  for (std::size_t i = 0; i < 4; ++i) {
    full.rows.push_back(i);
    full.cols.push_back(i);
  }
  const BlockDistribution same = fiber_distribution(gadget_gl(1), 2, 0b01, full);
  CHECK(same.weights == mixed.weights);

  Gadget zero{1, BoolMatrix(2, 2)};
  CHECK_THROWS_AS(fiber_distribution(zero, 1, 1), std::invalid_argument);
}

TEST_CASE("uniformity gap on pinned cases") {
  // Independent uniform inputs and a strongly unbiased gadget balance
  // every single block exactly.
  for (int ell = 1; ell <= 2; ++ell) {
    const BlockDistribution d = uniform_pairs(ell, 2);
    CHECK(uniformity_gap(d, gadget_gl(ell), {1}) == 0);
    CHECK(uniformity_gap(d, gadget_gl(ell), {2}) == 0);
    CHECK(uniformity_gap(d, gadget_gl(ell), {1, 2}) == 0);
  }

  CHECK(uniformity_gap(point_mass(1, 1, 0, 1), gadget_gl(1), {1}) == Rational(1, 2));

  // On its own fiber the gadget value is constant, with gap 1 - 2^-n.
  const BlockDistribution fiber = fiber_distribution(gadget_gl(1), 2, 0b10);
  CHECK(uniformity_gap(fiber, gadget_gl(1), {1, 2}) == Rational(3, 4));
}

TEST_CASE("find_dense_restriction on pinned cases") {
  const BlockDistribution uniform = uniform_pairs(1, 2);
  const DenseRestriction none = find_dense_restriction(uniform, Rational(1, 2));
  CHECK(none.fixed_blocks.empty());
  CHECK(none.conditioned.weights == uniform.weights);

  const BlockDistribution point = point_mass(1, 2, 0b01, 0b10);
  const DenseRestriction all = find_dense_restriction(point, Rational(1, 2));
  CHECK(all.fixed_blocks == std::vector<int>{1, 2});
  CHECK(all.alpha.first == 0b01);
  CHECK(all.alpha.second == 0b10);
  CHECK(all.conditioned.weights == point.weights);

  // Fiber conditioned on a half-weight rectangle: the restriction exists
  // and its projection to the untouched blocks is dense again.
  const BlockDistribution fiber = fiber_distribution(gadget_gl(1), 2, 0b00);
  Rectangle half;
  half.rows = {0, 1};
  half.cols = {0, 1, 2, 3};
  const BlockDistribution conditioned = condition_on_rectangle(fiber, half);
  const DenseRestriction r = find_dense_restriction(conditioned, Rational(1, 2));
  CHECK_FALSE(r.fixed_blocks.empty());
  Rational mass = 0;
  for (const auto& [key, w] : r.conditioned.weights) mass += w;
  CHECK(mass == 1);
}

TEST_CASE("min-entropy adds over independent block products") {
  const BlockDistribution a = fiber_distribution(gadget_gl(1), 1, 1);
  const BlockDistribution b = fiber_distribution(gadget_gl(1), 2, 0b00);
  const BlockDistribution prod = block_product(a, b);
  CHECK(prod.blocks == 3);
  const MinEntropy me = min_entropy(prod);
  CHECK(me.max_prob == min_entropy(a).max_prob * min_entropy(b).max_prob);

  CHECK_THROWS_AS(block_product(a, fiber_distribution(gadget_gl(2), 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("conditioning on a rectangle loses at most its log-probability") {
  const BlockDistribution fiber = fiber_distribution(gadget_gl(2), 2, 0b01);
  Rectangle rect;
  for (std::size_t i = 0; i < 8; ++i) rect.rows.push_back(i);
  for (std::size_t i = 0; i < 16; ++i) rect.cols.push_back(i);

  Rational mass = 0;
  for (const auto& [key, w] : fiber.weights) {
    const bool in_rows = key.first < 8;
    if (in_rows) mass += w;
  }
  REQUIRE(mass > 0);

  const BlockDistribution conditioned = condition_on_rectangle(fiber, rect);
  // max_prob grows by at most the inverse event probability.
  CHECK(min_entropy(conditioned).max_prob * mass <= min_entropy(fiber).max_prob);

  Rectangle empty_event;
  empty_event.rows = {};
  empty_event.cols = {};
  CHECK_THROWS_AS(condition_on_rectangle(fiber, empty_event), std::invalid_argument);
}

TEST_CASE("independent product keeps marginals and distributes mass") {
  const BlockDistribution fiber = fiber_distribution(gadget_gl(1), 2, 0b00);
  const BlockDistribution prod = independent_product(fiber);
  CHECK(marginal_x(prod) == marginal_x(fiber));
  CHECK(marginal_y(prod) == marginal_y(fiber));
  Rational mass = 0;
  for (const auto& [key, w] : prod.weights) mass += w;
  CHECK(mass == 1);
  // The diagonal fiber has fully correlated sides; the product spreads
  // them over all 16 pairs.
  CHECK(prod.weights.size() == 16);
  CHECK(is_delta_dense(prod, Rational(1, 2)).dense);
}

TEST_CASE("distribution validation catches malformed inputs") {
  BlockDistribution bad;
  bad.ell = 1;
  bad.blocks = 2;
  bad.weights[{0, 0}] = Rational(1, 2);
  CHECK_THROWS_AS(validate_distribution(bad), std::invalid_argument);
  bad.weights[{1, 1}] = Rational(1, 2);
  CHECK_NOTHROW(validate_distribution(bad));
  bad.weights[{200, 0}] = 0;
  CHECK_THROWS_AS(validate_distribution(bad), std::invalid_argument);

  BlockDistribution too_big;
  too_big.ell = 4;
  too_big.blocks = 3;
  too_big.weights[{0, 0}] = 1;
  CHECK_THROWS_AS(validate_distribution(too_big), std::invalid_argument);
}
