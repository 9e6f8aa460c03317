#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace binrank {

/// Boolean function on n variables as a table of 2^n bits. Input
/// z = (z_1, ..., z_n) is addressed by the integer sum z_j * 2^(n-j), i.e.
/// z_1 is the most significant bit. That encoding is fixed; the truth-table
/// file format and the block ordering of composed matrices rely on it.
class TruthTable {
 public:
  explicit TruthTable(int vars);  // constant 0

  static TruthTable from_bits(int vars, const std::vector<bool>& values);
  /// Table from an integer whose bit z is f(z); vars <= 6.
  static TruthTable from_integer(int vars, std::uint64_t bits);

  int vars() const { return vars_; }
  std::size_t size() const { return values_.size(); }

  bool value(std::size_t index) const { return values_[index]; }
  void set_value(std::size_t index, bool v) { values_[index] = v; }

  std::vector<std::size_t> ones() const;
  std::size_t ones_count() const;
  TruthTable negated() const;
  std::uint64_t as_integer() const;  // vars <= 6

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int vars_ = 0;
  std::vector<bool> values_;
};

TruthTable tt_and(int n);
TruthTable tt_or(int n);
TruthTable tt_xor(int n);
TruthTable tt_const(int n, bool value);

/// Conjunction of literals: each entry fixes variable `var` (1-based) to
/// `value`. Width is the number of fixed variables; the empty subcube is
/// the whole cube.
struct Subcube {
  std::vector<std::pair<int, int>> literals;  // (var, value), sorted by var

  int width() const { return static_cast<int>(literals.size()); }
  bool contains(std::size_t index, int n) const;

  friend bool operator==(const Subcube&, const Subcube&) = default;
};

struct Dnf {
  int vars = 0;
  std::vector<Subcube> clauses;
  bool unambiguous = false;
};

/// Smallest k such that f is a k-DNF; 0 for the constant-0 function.
int c1(const TruthTable& f);

/// c1 of the pointwise negation (smallest k such that f is a k-CNF).
int c0(const TruthTable& f);

/// Smallest k such that the ones of f partition into subcubes of width at
/// most k lying inside f^{-1}(1); 0 when f has no ones.
int uc1(const TruthTable& f);

/// A witnessing unambiguous DNF whose maximum clause width equals uc1(f).
Dnf uc1_witness(const TruthTable& f);

/// True iff `phi` evaluates exactly to f and, when flagged unambiguous, no
/// input satisfies two clauses.
bool verify_dnf(const TruthTable& f, const Dnf& phi);

TruthTable evaluate_dnf(const Dnf& phi);

struct GapResult {
  TruthTable f;
  int uc1_width = 0;
  int c0_width = 0;
  bool complete = false;  // exhaustive or budget not exceeded
};

/// Searches functions on `vars` variables for a large c0 - uc1 gap.
/// Exhaustive for vars <= 4 (budget 0 means no limit); for larger vars a
/// seeded sample of `budget` functions is scanned. Ties break toward the
/// smallest truth-table integer.
GapResult gap_search(int vars, std::size_t budget = 0);

/// Truth-table file format: first line n, second line exactly 2^n
/// characters of {0,1} in the index encoding above.
TruthTable parse_truth_table(std::string_view text);
std::string serialize_truth_table(const TruthTable& f);
TruthTable read_truth_table_file(const std::string& path);

std::string dnf_to_json(const Dnf& phi);
Dnf dnf_from_json(std::string_view text);

}  // namespace binrank
