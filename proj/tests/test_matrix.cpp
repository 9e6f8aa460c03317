#include <doctest.h>

#include "binrank/matrix.hpp"
#include "binrank/rng.hpp"

using namespace binrank;

TEST_CASE("parse_matrix reads the documented format") {
  const BoolMatrix m = parse_matrix("2 2\n01\n10\n");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK_FALSE(m.get(0, 0));
  CHECK(m.get(0, 1));
  CHECK(m.get(1, 0));
  CHECK_FALSE(m.get(1, 1));

  const BoolMatrix one = parse_matrix("1 1\n1\n");
  CHECK(one.get(0, 0));
}

TEST_CASE("parse_matrix tolerates comments and a trailing blank line") {
  const BoolMatrix m = parse_matrix("# gadget table\n2 2\n01\n# interior comment\n10\n\n");
  CHECK(m.get(0, 1));
  CHECK(m.get(1, 0));
}

TEST_CASE("parse_matrix rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse_matrix("2 2\n012\n10\n"), ParseError);
  try {
    parse_matrix("2 2\n012\n10\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_matrix("x y\n01\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n01\n1x\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n01\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n01\n10\njunk\n"), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    BoolMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.coin());
    CHECK(parse_matrix(serialize_matrix(m)) == m);
  }
}

TEST_CASE("complement flips every entry and is an involution") {
  const BoolMatrix i2 = BoolMatrix::identity(2);
  const BoolMatrix c = complement(i2);
  CHECK_FALSE(c.get(0, 0));
  CHECK(c.get(0, 1));
  CHECK(c.get(1, 0));
  CHECK_FALSE(c.get(1, 1));
  CHECK(complement(c) == i2);

  CHECK(complement(BoolMatrix::filled(3, 3, true)) == BoolMatrix(3, 3));
}

TEST_CASE("is_regular recognizes degrees and rejects non-square input") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto d = is_regular(BoolMatrix::identity(n));
    REQUIRE(d.has_value());
    CHECK(*d == 1);
  }
  BoolMatrix skew(2, 2);
  skew.set(0, 0, true);
  skew.set(0, 1, true);
  skew.set(1, 1, true);
  CHECK_FALSE(is_regular(skew).has_value());

  CHECK_THROWS_AS(is_regular(BoolMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("real_rank on pinned examples") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(real_rank(BoolMatrix::identity(n)) == n);
    CHECK(real_rank(BoolMatrix::filled(n, n, true)) == 1);
  }
  // 2-regular circulant with determinant 2, and its complement, a
  // permutation matrix.
  const BoolMatrix circulant = parse_matrix("3 3\n110\n011\n101\n");
  CHECK(real_rank(circulant) == 3);
  CHECK(real_rank(complement(circulant)) == 3);

  CHECK(real_rank(BoolMatrix(4, 7)) == 0);
}

TEST_CASE("rank and regularity are invariant under transpose") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng.below(7), c = 1 + rng.below(7);
    BoolMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.coin());
    CHECK(real_rank(m) == real_rank(transpose(m)));
    if (r == c) {
      CHECK(is_regular(m) == is_regular(transpose(m)));
    }
  }
}

TEST_CASE("random_regular produces the requested degree deterministically") {
  const BoolMatrix p = random_regular(3, 1, 42);
  CHECK(is_regular(p) == 1);  // a permutation matrix

  const BoolMatrix m = random_regular(5, 2, 7);
  CHECK(is_regular(m) == 2);

  CHECK(random_regular(5, 2, 7) == m);
  CHECK_FALSE(random_regular(5, 2, 8) == m);

  // Dense degrees go through the complement path.
  const BoolMatrix dense = random_regular(8, 6, 11);
  CHECK(is_regular(dense) == 6);
}

TEST_CASE("random_regular rejects infeasible parameters") {
  CHECK_THROWS_AS(random_regular(2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_regular(4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_regular(1, 1, 1), std::invalid_argument);
}

TEST_CASE("regular matrices keep the rank of their complement") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    const std::size_t d = 1 + rng.below(n - 1);
    const BoolMatrix m = random_regular(n, d, rng.next());
    CHECK(real_rank(m) == real_rank(complement(m)));
  }
}
