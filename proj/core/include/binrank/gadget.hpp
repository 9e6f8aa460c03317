#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "binrank/arith.hpp"
#include "binrank/boolfn.hpp"
#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"

namespace binrank {

/// Two-party function g on {0,1}^ell x {0,1}^ell, stored as its full value
/// table. Bit 1 of a block is the most significant bit of its index.
struct Gadget {
  int ell = 0;
  BoolMatrix table;  // 2^ell x 2^ell

  bool value(std::size_t x, std::size_t y) const { return table.get(x, y); }
  std::size_t side() const { return table.rows(); }
};

/// The shifted inner product gadget: first bits enter linearly, the rest
/// through the inner product, all mod 2.
Gadget gadget_gl(int ell);

/// Plain inner product mod 2.
Gadget gadget_ip(int ell);

/// True iff the gadget's table is exactly 2^(ell-1)-regular, i.e. fixing
/// either input leaves the output perfectly balanced.
bool is_strongly_unbiased(const Gadget& g);

inline constexpr std::size_t kDefaultComposeSideCap = std::size_t{1} << 12;

/// Matrix of the composed function f(g(x_1,y_1), ..., g(x_n,y_n)) where x
/// and y are split into n = f.vars() blocks of ell bits each and block 1 is
/// most significant in the row/column index.
BoolMatrix compose(const TruthTable& f, const Gadget& g,
                   std::size_t side_cap = kDefaultComposeSideCap);

/// Exact discrepancy under uniform inputs: max over rectangles R of
/// |P[g=0, R] - P[g=1, R]|. Enumerates row subsets with per-column optimal
/// completion; requires side <= 16. `parallel` splits subsets across
/// threads; the result is the same either way.
Rational discrepancy_exact(const Gadget& g, bool parallel = false);

/// Randomized lower bound for the discrepancy: the best rectangle imbalance
/// found by seeded random row subsets with hill climbing. Never exceeds the
/// true discrepancy.
Rational discrepancy_sample(const Gadget& g, std::size_t trials, std::uint64_t seed);

/// True iff disc^2 <= 2^-(ell+3), the square of the 2^-((ell+3)/2) bound.
bool within_discrepancy_bound(const Rational& disc, int ell);

struct SignMatrix {
  std::size_t side = 0;
  std::vector<std::int8_t> entries;  // row-major +1/-1

  int get(std::size_t r, std::size_t c) const { return entries[r * side + c]; }
};

/// The 2^ell-sided +-1 matrix with entry (-1)^(x . y).
SignMatrix hadamard(int ell);

/// Pairwise orthogonality of distinct rows and of distinct columns.
bool is_hadamard(const SignMatrix& h);

/// Checks |sum of every r x s submatrix| <= sqrt(r * s * side) exhaustively
/// over row subsets, with per-size optimal column selection. Requires a
/// Hadamard input and side <= 16. Comparisons are exact (squared integers).
bool lindsey_check(const SignMatrix& h);

/// Rectangle partition of the ones of compose(f, g) built from an
/// unambiguous DNF of f: one rectangle per clause and per accepted block
/// assignment on the clause's variables.
RectangleSet lifted_partition(const Dnf& phi, const Gadget& g,
                              std::size_t side_cap = kDefaultComposeSideCap);

/// Gadget files are the table in the matrix format preceded by a
/// "# ell=<ell>" comment line.
std::string serialize_gadget(const Gadget& g);
Gadget parse_gadget(std::string_view text);
Gadget read_gadget_file(const std::string& path);

}  // namespace binrank
