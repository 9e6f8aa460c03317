#include "binrank/matrix.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "binrank/arith.hpp"
#include "binrank/rng.hpp"

namespace binrank {

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("BoolMatrix: dimensions must be positive");
  }
  bits_.assign(rows_ * words_, 0);
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::filled(std::size_t rows, std::size_t cols, bool value) {
  BoolMatrix m(rows, cols);
  if (value) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, true);
  }
  return m;
}

std::size_t BoolMatrix::row_ones(std::size_t r) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    count += static_cast<std::size_t>(std::popcount(bits_[r * words_ + w]));
  }
  return count;
}

std::size_t BoolMatrix::col_ones(std::size_t c) const {
  std::size_t count = 0;
  for (std::size_t r = 0; r < rows_; ++r) count += get(r, c);
  return count;
}

std::size_t BoolMatrix::ones_count() const {
  std::size_t count = 0;
  for (std::size_t r = 0; r < rows_; ++r) count += row_ones(r);
  return count;
}

BoolMatrix complement(const BoolMatrix& m) {
  BoolMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, !m.get(r, c));
  return out;
}

BoolMatrix transpose(const BoolMatrix& m) {
  BoolMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) out.set(c, r, true);
  return out;
}

std::optional<std::size_t> is_regular(const BoolMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("is_regular: matrix must be square");
  }
  const std::size_t d = m.row_ones(0);
  for (std::size_t r = 1; r < m.rows(); ++r)
    if (m.row_ones(r) != d) return std::nullopt;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.col_ones(c) != d) return std::nullopt;
  return d;
}

std::size_t real_rank(const BoolMatrix& m) {
  const std::size_t n = m.rows(), cols = m.cols();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(cols));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m.get(r, c) ? 1 : 0;

  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < cols && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

// Random permutation whose support avoids `used`, as a vector col[row].
// First tries plain rejection; if the union of previous permutations makes
// that too unlikely, falls back to augmenting-path matching on the free
// cells, which always succeeds while free cells form a regular pattern.
std::optional<std::vector<std::size_t>> disjoint_permutation(const BoolMatrix& used,
                                                             SplitMix64& rng) {
  const std::size_t n = used.rows();
  std::vector<std::size_t> perm(n);
  for (int attempt = 0; attempt < 300; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = !used.get(i, perm[i]);
    if (ok) return perm;
  }

  // Kuhn's algorithm over the bipartite graph of free cells.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!used.get(i, j)) adj[i].push_back(j);
    rng.shuffle(adj[i]);
  }
  std::vector<std::ptrdiff_t> match_col(n, -1);
  std::vector<char> visited(n, 0);
  auto augment = [&](auto&& self, std::size_t row) -> bool {
    for (std::size_t j : adj[row]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match_col[j] < 0 || self(self, static_cast<std::size_t>(match_col[j]))) {
        match_col[j] = static_cast<std::ptrdiff_t>(row);
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t row : order) {
    visited.assign(n, 0);
    if (!augment(augment, row)) return std::nullopt;
  }
  for (std::size_t j = 0; j < n; ++j) perm[static_cast<std::size_t>(match_col[j])] = j;
  return perm;
}

}  // namespace

BoolMatrix random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 2 || d == 0 || d >= n) {
    throw std::invalid_argument("random_regular: need 0 < d < n");
  }
  // For d > n/2 generate the (n-d)-regular complement; disjointness is far
  // easier to hit at low degree and the result is exactly d-regular.
  const bool flip = d > n / 2;
  const std::size_t dd = flip ? n - d : d;

  SplitMix64 rng(mix_seed(seed, n, d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BoolMatrix acc(n, n);
    bool ok = true;
    for (std::size_t t = 0; t < dd && ok; ++t) {
      auto perm = disjoint_permutation(acc, rng);
      if (!perm) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) acc.set(i, (*perm)[i], true);
    }
    if (ok) return flip ? complement(acc) : acc;
  }
  throw std::runtime_error("random_regular: sampling failed after 1000 attempts");
}

BoolMatrix parse_matrix(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto next_line = [&](std::string_view& line) -> bool {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.front() == '#') continue;  // comment
      return true;
    }
    return false;
  };

  std::string_view header;
  if (!next_line(header) || header.empty()) {
    throw ParseError(line_no ? line_no : 1, "missing header 'R C'");
  }
  std::size_t rows = 0, cols = 0;
  {
    std::istringstream in{std::string(header)};
    long long r = 0, c = 0;
    if (!(in >> r >> c) || r <= 0 || c <= 0) {
      throw ParseError(line_no, "malformed header, expected 'R C' with positive integers");
    }
    std::string rest;
    if (in >> rest) {
      throw ParseError(line_no, "malformed header, trailing content");
    }
    rows = static_cast<std::size_t>(r);
    cols = static_cast<std::size_t>(c);
  }

  BoolMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string_view line;
    if (!next_line(line)) {
      throw ParseError(line_no + 1, "unexpected end of input, expected matrix row");
    }
    if (line.size() != cols) {
      throw ParseError(line_no, "row length mismatch, expected " + std::to_string(cols) +
                                    " characters, got " + std::to_string(line.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (line[c] == '1') {
        m.set(r, c, true);
      } else if (line[c] != '0') {
        throw ParseError(line_no, std::string("invalid character '") + line[c] +
                                      "', expected '0' or '1'");
      }
    }
  }

  std::string_view extra;
  while (next_line(extra)) {
    if (!extra.empty()) {
      throw ParseError(line_no, "unexpected content after matrix rows");
    }
  }
  return m;
}

std::string serialize_matrix(const BoolMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  out.reserve(out.size() + m.rows() * (m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

BoolMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

void write_matrix_file(const std::string& path, const BoolMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << serialize_matrix(m);
}

}  // namespace binrank
