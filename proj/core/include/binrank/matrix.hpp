#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace binrank {

/// Dense rectangular 0,1 matrix with bit-packed rows.
///
/// Instances are treated as immutable values once built: every operation on
/// them returns a new matrix, so concurrent reads are safe.
class BoolMatrix {
 public:
  BoolMatrix() = default;

  /// Zero-filled matrix; both dimensions must be at least 1.
  BoolMatrix(std::size_t rows, std::size_t cols);

  static BoolMatrix identity(std::size_t n);
  static BoolMatrix filled(std::size_t rows, std::size_t cols, bool value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1ULL;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = 1ULL << (c & 63);
    if (v)
      bits_[r * words_ + (c >> 6)] |= mask;
    else
      bits_[r * words_ + (c >> 6)] &= ~mask;
  }

  std::size_t row_ones(std::size_t r) const;
  std::size_t col_ones(std::size_t c) const;
  std::size_t ones_count() const;

  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;  // 64-bit words per row
  std::vector<std::uint64_t> bits_;
};

/// Entrywise 1 - M. Involution: complement(complement(M)) == M.
BoolMatrix complement(const BoolMatrix& m);

BoolMatrix transpose(const BoolMatrix& m);

/// Degree d if every row and every column of the square matrix has exactly
/// d ones, std::nullopt otherwise. Throws std::invalid_argument when the
/// matrix is not square.
std::optional<std::size_t> is_regular(const BoolMatrix& m);

/// Rank over the rationals, computed by Bareiss fraction-free elimination
/// on arbitrary-precision integers. No floating point is involved.
std::size_t real_rank(const BoolMatrix& m);

/// Random n x n d-regular matrix, deterministic for a fixed (n, d, seed).
/// Sampled as a superposition of d support-disjoint random permutation
/// matrices. Requires 0 < d < n.
BoolMatrix random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Combinatorial rectangle: a sorted set of rows times a sorted set of
/// columns. Meaningful relative to some host matrix.
struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Parse failure with the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Matrix file format: header line "R C", then R lines of exactly C
/// characters from {0,1}, LF line endings. Lines starting with '#' are
/// skipped. A trailing blank line is tolerated.
BoolMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const BoolMatrix& m);

BoolMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const BoolMatrix& m);

}  // namespace binrank
