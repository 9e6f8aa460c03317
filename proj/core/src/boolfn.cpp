#include "binrank/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "binrank/matrix.hpp"
#include "binrank/rng.hpp"

namespace binrank {

namespace {

using Bits = boost::dynamic_bitset<>;

void check_vars(int vars) {
  if (vars < 0 || vars > 20) {
    throw std::invalid_argument("TruthTable: variable count must be in [0, 20]");
  }
}

// Calls fn(mask, vals, free) for every subcube contained in the ones of f.
// A subcube fixes the variables in `mask` to the bits of `vals`; its points
// are vals | q over all q inside `free`.
template <typename Fn>
void for_each_inside_cube(const TruthTable& f, Fn&& fn) {
  const std::size_t size = f.size();
  const std::uint32_t full = size == 1 ? 0 : static_cast<std::uint32_t>(size - 1);
  std::uint32_t mask = 0;
  do {
    const std::uint32_t free = full & ~mask;
    std::uint32_t vals = 0;
    do {
      bool inside = true;
      std::uint32_t q = 0;
      do {
        if (!f.value(vals | q)) {
          inside = false;
          break;
        }
        q = (q - free) & free;
      } while (q != 0);
      if (inside) fn(mask, vals, free);
      vals = (vals - mask) & mask;
    } while (vals != 0);
    mask = (mask - full) & full;
  } while (mask != 0);
}

Subcube to_subcube(std::uint32_t mask, std::uint32_t vals, int n) {
  Subcube out;
  for (int var = 1; var <= n; ++var) {
    const std::uint32_t bit = std::uint32_t{1} << (n - var);
    if (mask & bit) out.literals.emplace_back(var, (vals & bit) ? 1 : 0);
  }
  return out;
}

// Max over one-points of the minimum width of a monochromatic-1 subcube
// through the point; 0 when f has no ones.
int max_min_cube_width(const TruthTable& f) {
  std::vector<int> min_width(f.size(), std::numeric_limits<int>::max());
  for_each_inside_cube(f, [&](std::uint32_t mask, std::uint32_t vals, std::uint32_t free) {
    const int width = std::popcount(mask);
    std::uint32_t q = 0;
    do {
      min_width[vals | q] = std::min(min_width[vals | q], width);
      q = (q - free) & free;
    } while (q != 0);
  });
  int result = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f.value(p)) result = std::max(result, min_width[p]);
  }
  return result;
}

struct InsideCube {
  std::uint32_t mask = 0;
  std::uint32_t vals = 0;
  Bits cells;  // over the list of one-points
};

std::vector<InsideCube> inside_cubes(const TruthTable& f, const std::vector<std::size_t>& ones) {
  std::vector<std::size_t> cell_index(f.size(), 0);
  for (std::size_t i = 0; i < ones.size(); ++i) cell_index[ones[i]] = i;

  std::vector<InsideCube> out;
  for_each_inside_cube(f, [&](std::uint32_t mask, std::uint32_t vals, std::uint32_t free) {
    Bits cells(ones.size());
    std::uint32_t q = 0;
    do {
      cells.set(cell_index[vals | q]);
      q = (q - free) & free;
    } while (q != 0);
    out.push_back({mask, vals, std::move(cells)});
  });

  std::sort(out.begin(), out.end(), [](const InsideCube& a, const InsideCube& b) {
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.vals < b.vals;
  });
  return out;
}

// Exact cover of the one-points by the given cubes. Branches on the cell
// with the fewest admissible cubes.
std::optional<std::vector<std::size_t>> exact_cover(const std::vector<InsideCube>& cubes,
                                                    std::size_t cell_count) {
  std::vector<std::vector<std::size_t>> covers(cell_count);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    for (std::size_t c = cubes[i].cells.find_first(); c != Bits::npos;
         c = cubes[i].cells.find_next(c)) {
      covers[c].push_back(i);
    }
  }

  std::vector<std::size_t> chosen;
  Bits covered(cell_count);

  auto rec = [&](auto&& self) -> bool {
    if (covered.count() == cell_count) return true;
    std::size_t cell = cell_count;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < cell_count; ++c) {
      if (covered.test(c)) continue;
      std::size_t admissible = 0;
      for (std::size_t i : covers[c]) {
        if ((cubes[i].cells & covered).none()) ++admissible;
      }
      if (admissible < fewest) {
        fewest = admissible;
        cell = c;
      }
      if (fewest == 0) return false;
    }
    for (std::size_t i : covers[cell]) {
      if ((cubes[i].cells & covered).any()) continue;
      covered |= cubes[i].cells;
      chosen.push_back(i);
      if (self(self)) return true;
      chosen.pop_back();
      covered -= cubes[i].cells;
    }
    return false;
  };

  if (rec(rec)) return chosen;
  return std::nullopt;
}

void check_dnf_shape(const Dnf& phi) {
  for (const auto& clause : phi.clauses) {
    int prev = 0;
    for (const auto& [var, val] : clause.literals) {
      if (var < 1 || var > phi.vars || (val != 0 && val != 1)) {
        throw std::invalid_argument("Dnf: literal out of range");
      }
      if (var <= prev) {
        throw std::invalid_argument("Dnf: clause literals must be sorted with distinct variables");
      }
      prev = var;
    }
  }
}

}  // namespace

TruthTable::TruthTable(int vars) : vars_(vars) {
  check_vars(vars);
  values_.assign(std::size_t{1} << vars, false);
}

TruthTable TruthTable::from_bits(int vars, const std::vector<bool>& values) {
  TruthTable f(vars);
  if (values.size() != f.size()) {
    throw std::invalid_argument("TruthTable: need exactly 2^n values");
  }
  f.values_ = values;
  return f;
}

TruthTable TruthTable::from_integer(int vars, std::uint64_t bits) {
  if (vars > 6) throw std::invalid_argument("TruthTable::from_integer: vars must be <= 6");
  TruthTable f(vars);
  for (std::size_t p = 0; p < f.size(); ++p) f.values_[p] = (bits >> p) & 1;
  return f;
}

std::vector<std::size_t> TruthTable::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < values_.size(); ++p)
    if (values_[p]) out.push_back(p);
  return out;
}

std::size_t TruthTable::ones_count() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), true));
}

TruthTable TruthTable::negated() const {
  TruthTable f(vars_);
  for (std::size_t p = 0; p < values_.size(); ++p) f.values_[p] = !values_[p];
  return f;
}

std::uint64_t TruthTable::as_integer() const {
  if (vars_ > 6) throw std::invalid_argument("TruthTable::as_integer: vars must be <= 6");
  std::uint64_t bits = 0;
  for (std::size_t p = 0; p < values_.size(); ++p)
    if (values_[p]) bits |= std::uint64_t{1} << p;
  return bits;
}

TruthTable tt_and(int n) {
  TruthTable f(n);
  f.set_value(f.size() - 1, true);
  return f;
}

TruthTable tt_or(int n) {
  TruthTable f(n);
  for (std::size_t p = 1; p < f.size(); ++p) f.set_value(p, true);
  return f;
}

TruthTable tt_xor(int n) {
  TruthTable f(n);
  for (std::size_t p = 0; p < f.size(); ++p) f.set_value(p, std::popcount(p) % 2 == 1);
  return f;
}

TruthTable tt_const(int n, bool value) {
  TruthTable f(n);
  if (value) {
    for (std::size_t p = 0; p < f.size(); ++p) f.set_value(p, true);
  }
  return f;
}

bool Subcube::contains(std::size_t index, int n) const {
  for (const auto& [var, val] : literals) {
    if (((index >> (n - var)) & 1) != static_cast<std::size_t>(val)) return false;
  }
  return true;
}

int c1(const TruthTable& f) { return max_min_cube_width(f); }

int c0(const TruthTable& f) { return c1(f.negated()); }

Dnf uc1_witness(const TruthTable& f) {
  const int n = f.vars();
  Dnf witness;
  witness.vars = n;
  witness.unambiguous = true;

  const auto ones = f.ones();
  if (ones.empty()) return witness;

  const auto all_cubes = inside_cubes(f, ones);
  for (int k = c1(f); k <= n; ++k) {
    std::vector<InsideCube> cubes;
    for (const auto& cube : all_cubes) {
      if (std::popcount(cube.mask) <= k) cubes.push_back(cube);
    }
    if (auto cover = exact_cover(cubes, ones.size())) {
      for (std::size_t i : *cover) witness.clauses.push_back(to_subcube(cubes[i].mask, cubes[i].vals, n));
      return witness;
    }
  }
  throw std::logic_error("uc1_witness: no subcube partition found");  // width n always works
}

int uc1(const TruthTable& f) {
  const Dnf witness = uc1_witness(f);
  int width = 0;
  for (const auto& clause : witness.clauses) width = std::max(width, clause.width());
  return width;
}

TruthTable evaluate_dnf(const Dnf& phi) {
  check_dnf_shape(phi);
  TruthTable f(phi.vars);
  for (std::size_t p = 0; p < f.size(); ++p) {
    for (const auto& clause : phi.clauses) {
      if (clause.contains(p, phi.vars)) {
        f.set_value(p, true);
        break;
      }
    }
  }
  return f;
}

bool verify_dnf(const TruthTable& f, const Dnf& phi) {
  if (phi.vars != f.vars()) return false;
  check_dnf_shape(phi);
  for (std::size_t p = 0; p < f.size(); ++p) {
    std::size_t satisfied = 0;
    for (const auto& clause : phi.clauses) {
      if (clause.contains(p, phi.vars)) ++satisfied;
    }
    if ((satisfied > 0) != f.value(p)) return false;
    if (phi.unambiguous && satisfied > 1) return false;
  }
  return true;
}

GapResult gap_search(int vars, std::size_t budget) {
  check_vars(vars);
  GapResult best{TruthTable(vars), 0, 0, false};
  int best_gap = std::numeric_limits<int>::min();

  auto consider = [&](const TruthTable& f) {
    const int u = uc1(f);
    const int z = c0(f);
    if (z - u > best_gap) {
      best_gap = z - u;
      best.f = f;
      best.uc1_width = u;
      best.c0_width = z;
    }
  };

  if (vars <= 4) {
    const std::uint64_t total = std::uint64_t{1} << (std::size_t{1} << vars);
    std::uint64_t limit = total;
    if (budget != 0 && budget < total) limit = budget;
    for (std::uint64_t t = 0; t < limit; ++t) consider(TruthTable::from_integer(vars, t));
    best.complete = limit == total;
    return best;
  }

  // Sampled mode; exhaustive enumeration is out of reach beyond 4 variables.
  const std::size_t samples = budget == 0 ? 10000 : budget;
  SplitMix64 rng(mix_seed(0xB001F, static_cast<std::uint64_t>(vars)));
  const std::size_t size = std::size_t{1} << vars;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<bool> bits(size);
    for (std::size_t p = 0; p < size; p += 64) {
      const std::uint64_t word = rng.next();
      for (std::size_t b = 0; b < 64 && p + b < size; ++b) bits[p + b] = (word >> b) & 1;
    }
    consider(TruthTable::from_bits(vars, bits));
  }
  best.complete = false;
  return best;
}

TruthTable parse_truth_table(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) {
    throw ParseError(1, "truth table needs a header line and a value line");
  }
  int n = 0;
  {
    std::istringstream in{std::string(lines[0])};
    if (!(in >> n) || n < 0 || n > 20) throw ParseError(1, "malformed variable count");
    std::string rest;
    if (in >> rest) throw ParseError(1, "malformed header, trailing content");
  }
  const std::string_view row = lines[1];
  const std::size_t expect = std::size_t{1} << n;
  if (row.size() != expect) {
    throw ParseError(2, "expected exactly " + std::to_string(expect) + " characters");
  }
  std::vector<bool> bits(expect);
  for (std::size_t p = 0; p < expect; ++p) {
    if (row[p] == '1') {
      bits[p] = true;
    } else if (row[p] != '0') {
      throw ParseError(2, std::string("invalid character '") + row[p] + "'");
    }
  }
  if (lines.size() > 2) throw ParseError(3, "unexpected content after values");
  return TruthTable::from_bits(n, bits);
}

std::string serialize_truth_table(const TruthTable& f) {
  std::string out = std::to_string(f.vars()) + "\n";
  for (std::size_t p = 0; p < f.size(); ++p) out.push_back(f.value(p) ? '1' : '0');
  out.push_back('\n');
  return out;
}

TruthTable read_truth_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open truth-table file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_truth_table(buf.str());
}

std::string dnf_to_json(const Dnf& phi) {
  nlohmann::json j;
  j["n"] = phi.vars;
  j["unambiguous"] = phi.unambiguous;
  nlohmann::json clauses = nlohmann::json::array();
  for (const auto& clause : phi.clauses) {
    nlohmann::json lits = nlohmann::json::array();
    for (const auto& [var, val] : clause.literals) lits.push_back({var, val});
    clauses.push_back(std::move(lits));
  }
  j["clauses"] = std::move(clauses);
  return j.dump();
}

Dnf dnf_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Dnf phi;
  phi.vars = j.at("n").get<int>();
  phi.unambiguous = j.value("unambiguous", false);
  for (const auto& clause : j.at("clauses")) {
    Subcube cube;
    for (const auto& lit : clause) {
      cube.literals.emplace_back(lit.at(0).get<int>(), lit.at(1).get<int>());
    }
    std::sort(cube.literals.begin(), cube.literals.end());
    phi.clauses.push_back(std::move(cube));
  }
  check_dnf_shape(phi);
  return phi;
}

}  // namespace binrank
