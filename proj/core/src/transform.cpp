#include "binrank/transform.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace binrank {

namespace {

std::vector<std::size_t> set_intersection(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> set_difference(const std::vector<std::size_t>& a,
                                        const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> shifted(const std::vector<std::size_t>& v, std::size_t offset) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (std::size_t x : v) out.push_back(x + offset);
  return out;
}

std::size_t require_degree(const BoolMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  const auto d = is_regular(m);
  if (!d) throw std::invalid_argument(std::string(who) + ": matrix must be regular");
  if (*d == 0 || *d == m.rows()) {
    throw std::invalid_argument(std::string(who) + ": need 0 < d < n");
  }
  return *d;
}

std::vector<std::array<std::size_t, 3>> pair_vertex_map(std::size_t n, std::size_t copies) {
  std::vector<std::array<std::size_t, 3>> out;
  out.reserve(copies * n * n);
  for (std::size_t b = 0; b < copies; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.push_back({i, j, b});
  return out;
}

}  // namespace

std::size_t ceil_cube_root(std::size_t value) {
  if (value == 0) return 0;
  std::size_t t = 1;
  while (static_cast<unsigned __int128>(t) * t * t < value) ++t;
  return t;
}

HGraphBundle build_h(const BoolMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("build_h: matrix must be square");
  }
  const std::size_t n = m.rows();
  HGraphBundle bundle;
  bundle.n = n;
  bundle.h = Graph(n * n);
  for (std::size_t p = 0; p < n * n; ++p) {
    const std::size_t i1 = p / n, j1 = p % n;
    for (std::size_t q = p; q < n * n; ++q) {
      const std::size_t i2 = q / n, j2 = q % n;
      if (m.get(i1, j2) || m.get(i2, j1)) bundle.h.add_edge(p, q);
    }
  }
  for (std::size_t p = 0; p < n * n; ++p) {
    (bundle.h.has_loop(p) ? bundle.v1 : bundle.v0).push_back(p);
  }
  bundle.h0 = bundle.h.induced(bundle.v0);
  return bundle;
}

BicliqueCovering build_covering(const BoolMatrix& m, const RectangleSet& partition) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("build_covering: matrix must be square");
  }
  if (partition.kind != RectKind::partition || !verify_rectangles(m, partition)) {
    throw std::invalid_argument("build_covering: input is not a rectangle partition of the ones");
  }
  const std::size_t n = m.rows();
  BicliqueCovering covering;
  covering.t = 2;
  for (const auto& rect : partition.rects) {
    Biclique bc;
    for (std::size_t i : rect.rows)
      for (std::size_t j = 0; j < n; ++j) bc.a.push_back(i * n + j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : rect.cols) bc.b.push_back(i * n + j);
    std::sort(bc.a.begin(), bc.a.end());
    std::sort(bc.b.begin(), bc.b.end());
    covering.bicliques.push_back(std::move(bc));
  }
  return covering;
}

void split_layers(HGraphBundle& bundle) {
  bundle.h0_layer1 = Graph(bundle.v0.size());
  bundle.h0_layer2 = Graph(bundle.v0.size());
  for (const auto& [a, b] : bundle.h0.edges()) {
    const std::size_t count = coverage_count(bundle.h, bundle.covering.bicliques,
                                             {bundle.v0[a], bundle.v0[b]});
    if (count == 1) {
      bundle.h0_layer1.add_edge(a, b);
    } else if (count == 2) {
      bundle.h0_layer2.add_edge(a, b);
    } else {
      throw std::logic_error("split_layers: coverage outside {1, 2}");
    }
  }
}

HGraphBundle build_bundle(const BoolMatrix& m, const RectangleSet& partition) {
  HGraphBundle bundle = build_h(m);
  bundle.covering = build_covering(m, partition);
  split_layers(bundle);
  return bundle;
}

TransformOutput build_two_copy_output(const BoolMatrix& m, const HGraphBundle& bundle,
                                      std::size_t m_value) {
  const std::size_t d = require_degree(m, "build_two_copy_output");
  const std::size_t n = bundle.n;
  const std::size_t big = n * n;
  const std::size_t k = bundle.covering.bicliques.size();

  // Refine every biclique (A, B) into an equal-part biclique on the common
  // vertices and two disjoint-part bicliques; together they cover the same
  // oriented edges.
  std::vector<Biclique> equal_part, rest;
  for (const auto& bc : bundle.covering.bicliques) {
    const auto common = set_intersection(bc.a, bc.b);
    const auto a_only = set_difference(bc.a, bc.b);
    const auto b_only = set_difference(bc.b, bc.a);
    if (!common.empty()) equal_part.push_back({common, common});
    if (!common.empty() && !b_only.empty()) rest.push_back({common, b_only});
    if (!a_only.empty() && !bc.b.empty()) rest.push_back({a_only, bc.b});
  }

  // Edges touched by the equal-part bicliques; includes every loop.
  Graph equal_edges(big);
  for (const auto& bc : equal_part) {
    for (std::size_t x : bc.a)
      for (std::size_t y : bc.a) equal_edges.add_edge(x, y);
  }
  for (const auto& e : equal_edges.edges()) {
    if (coverage_count(bundle.h, rest, e) != 0) {
      throw std::logic_error("build_two_copy_output: refined coverings overlap");
    }
  }

  Graph f(big);
  for (const auto& [u, v] : bundle.h.edges()) {
    if (!equal_edges.has_edge(u, v)) f.add_edge(u, v);
  }
  if (!f.is_simple()) {
    throw std::logic_error("build_two_copy_output: loops survived the refinement");
  }

  BicliqueCovering rest_cov;
  rest_cov.t = 2;
  rest_cov.bicliques = rest;
  if (!verify_covering(f, rest_cov)) {
    throw std::logic_error("build_two_copy_output: residual covering fails verification");
  }

  const BicliqueCovering f2_partition = partition_from_t_covering(f, rest_cov);
  const Graph f2 = exactly_t_covered_subgraph(f, rest_cov);

  TransformOutput out;
  out.case_tag = 1;
  out.k = k;
  out.m = m_value;
  out.degree = d * d;
  out.chi_threshold = ceil_cube_root(m_value);
  out.vertex_map = pair_vertex_map(n, 2);

  out.g = Graph(2 * big);
  for (const auto& [x, y] : f2.edges()) {
    out.g.add_edge(x, y);
    out.g.add_edge(big + x, big + y);
  }
  for (const auto& bc : equal_part) {
    for (std::size_t x : bc.a)
      for (std::size_t y : bc.a) out.g.add_edge(x, big + y);
  }

  out.bp_certificate.t = 1;
  for (std::size_t b = 0; b < 2; ++b) {
    for (const auto& bc : f2_partition.bicliques) {
      out.bp_certificate.bicliques.push_back({shifted(bc.a, b * big), shifted(bc.b, b * big)});
    }
  }
  for (const auto& bc : equal_part) {
    out.bp_certificate.bicliques.push_back({bc.a, shifted(bc.a, big)});
  }
  return out;
}

TransformOutput build_cyclic_output(const BoolMatrix& m, const HGraphBundle& bundle,
                                    const std::vector<std::size_t>& s, std::size_t m_value) {
  const std::size_t d = require_degree(m, "build_cyclic_output");
  const std::size_t n = bundle.n;
  const std::size_t big = n * n;
  const std::size_t k = bundle.covering.bicliques.size();

  std::vector<char> in_s(big, 0);
  for (std::size_t v : s) in_s.at(v) = 1;

  // The cyclic 3-partite graph: every covering biclique connects copy b to
  // copy b+1. Each edge arises from exactly one oriented covered pair.
  Graph gprime(3 * big);
  for (const auto& bc : bundle.covering.bicliques) {
    for (std::size_t b = 0; b < 3; ++b) {
      const std::size_t to = ((b + 1) % 3) * big;
      for (std::size_t x : bc.a) {
        for (std::size_t y : bc.b) {
          if (gprime.has_edge(b * big + x, to + y)) {
            throw std::logic_error("build_cyclic_output: an oriented pair is covered twice");
          }
          gprime.add_edge(b * big + x, to + y);
        }
      }
    }
  }

  TransformOutput out;
  out.case_tag = 2;
  out.k = k;
  out.m = m_value;
  out.degree = 2 * n * d;
  out.chi_threshold = ceil_cube_root(m_value);
  out.vertex_map = pair_vertex_map(n, 3);

  // Drop the edges inside the three copies of S, then give each copy the
  // induced subgraph of H on S.
  out.g = Graph(3 * big);
  for (const auto& [p, q] : gprime.edges()) {
    if (in_s[p % big] && in_s[q % big]) continue;
    out.g.add_edge(p, q);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!bundle.h.has_edge(s[i], s[j])) continue;
      for (std::size_t b = 0; b < 3; ++b) {
        out.g.add_edge(b * big + s[i], b * big + s[j]);
      }
    }
  }

  out.bp_certificate.t = 1;
  const std::vector<std::size_t> s_sorted = [&] {
    auto copy = s;
    std::sort(copy.begin(), copy.end());
    return copy;
  }();
  for (const auto& bc : bundle.covering.bicliques) {
    const auto a_out = set_difference(bc.a, s_sorted);
    const auto a_in = set_intersection(bc.a, s_sorted);
    const auto b_out = set_difference(bc.b, s_sorted);
    for (std::size_t b = 0; b < 3; ++b) {
      const std::size_t to = ((b + 1) % 3) * big;
      if (!a_out.empty() && !bc.b.empty()) {
        out.bp_certificate.bicliques.push_back({shifted(a_out, b * big), shifted(bc.b, to)});
      }
      if (!a_in.empty() && !b_out.empty()) {
        out.bp_certificate.bicliques.push_back({shifted(a_in, b * big), shifted(b_out, to)});
      }
    }
  }
  for (std::size_t b = 0; b < 3; ++b) {
    for (const auto& bc : bundle.covering.bicliques) {
      const auto a_in = set_intersection(bc.a, s_sorted);
      const auto b_in = set_intersection(bc.b, s_sorted);
      if (a_in.empty() || b_in.empty()) continue;
      out.bp_certificate.bicliques.push_back({shifted(a_in, b * big), shifted(b_in, b * big)});
    }
  }
  return out;
}

TransformOutput transform(const BoolMatrix& m, const SolveBudgets& budgets,
                          std::optional<std::size_t> supplied_m) {
  require_degree(m, "transform");

  const RankResult rbin = binary_rank(m, budgets.rank_nodes);
  if (!rbin.optimal) {
    throw std::runtime_error("transform: node budget exhausted in the rectangle partition stage");
  }

  std::size_t m_value = 0;
  if (supplied_m) {
    m_value = *supplied_m;
    if (m_value == 0) throw std::invalid_argument("transform: supplied m must be positive");
  } else {
    const RankResult rbool = boolean_rank(complement(m), budgets.rank_nodes);
    if (!rbool.optimal) {
      throw std::runtime_error("transform: node budget exhausted in the complement cover stage");
    }
    m_value = rbool.value;
  }

  HGraphBundle bundle = build_bundle(m, rbin.certificate);
  const ChiResult chi2 = chromatic_number(bundle.h0_layer2);

  if (static_cast<unsigned __int128>(chi2.chi) * chi2.chi * chi2.chi >= m_value) {
    return build_two_copy_output(m, bundle, m_value);
  }

  // The layer-2 coloring splits V0 into independent sets; some class keeps
  // the layer-1 chromatic number at or above the threshold.
  std::vector<std::vector<std::size_t>> classes(chi2.chi);
  for (std::size_t pos = 0; pos < bundle.v0.size(); ++pos) {
    classes[static_cast<std::size_t>(chi2.coloring[pos])].push_back(pos);
  }
  const std::size_t threshold = ceil_cube_root(m_value);
  std::size_t best_class = classes.size();
  std::size_t best_chi = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::size_t chi = chromatic_number(bundle.h0_layer1.induced(classes[c])).chi;
    if (chi > best_chi) {
      best_chi = chi;
      best_class = c;
    }
  }
  if (best_class == classes.size() || best_chi < threshold) {
    throw std::runtime_error("transform: no color class reaches the chromatic threshold");
  }
  std::vector<std::size_t> s;
  for (std::size_t pos : classes[best_class]) s.push_back(bundle.v0[pos]);
  return build_cyclic_output(m, bundle, s, m_value);
}

TransformReport verify_output(const BoolMatrix& m, const TransformOutput& out) {
  TransformReport report;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back({name, pass, detail});
  };

  add("simple", out.g.is_simple(), "graph must not have loops");

  std::string degree_detail;
  bool degree_ok = false;
  try {
    const std::size_t d = require_degree(m, "verify_output");
    const std::size_t expected =
        out.case_tag == 1 ? d * d : 2 * m.rows() * d;
    const auto actual = out.g.regular_degree();
    degree_ok = actual.has_value() && *actual == expected && out.degree == expected;
    degree_detail = "expected degree " + std::to_string(expected) +
                    (actual ? ", got " + std::to_string(*actual) : ", graph is irregular");
  } catch (const std::exception& e) {
    degree_detail = e.what();
  }
  add("regular", degree_ok, degree_detail);

  bool cert_ok = false;
  std::string cert_detail;
  try {
    cert_ok = out.bp_certificate.t == 1 && verify_covering(out.g, out.bp_certificate);
    cert_detail = "partition of the edges by " +
                  std::to_string(out.bp_certificate.bicliques.size()) + " bicliques";
  } catch (const std::exception& e) {
    cert_detail = e.what();
  }
  add("bp-certificate", cert_ok, cert_detail);

  const std::size_t bound = out.case_tag == 1 ? 33 * out.k * out.k : 9 * out.k;
  add("bp-size",
      out.bp_certificate.bicliques.size() <= bound,
      std::to_string(out.bp_certificate.bicliques.size()) + " <= " + std::to_string(bound));

  bool chi_ok = false;
  std::string chi_detail;
  try {
    chi_ok = out.chi_threshold >= 1 && !k_colorable(out.g, out.chi_threshold - 1);
    chi_detail = "not " + std::to_string(out.chi_threshold - 1) + "-colorable";
  } catch (const std::exception& e) {
    chi_detail = e.what();
  }
  add("chromatic-threshold", chi_ok, chi_detail);

  report.pass = true;
  for (const auto& check : report.checks) report.pass = report.pass && check.pass;
  return report;
}

RectangleSet zero_cover_from_h0_coloring(const BoolMatrix& m, const HGraphBundle& bundle,
                                         const std::vector<int>& h0_coloring) {
  if (m.rows() != bundle.n || m.cols() != bundle.n) {
    throw std::invalid_argument("zero_cover_from_h0_coloring: bundle does not match the matrix");
  }
  if (!is_proper_coloring(bundle.h0, h0_coloring)) {
    throw std::invalid_argument("zero_cover_from_h0_coloring: coloring is not proper for h0");
  }
  const std::size_t n = bundle.n;
  int max_color = -1;
  for (int c : h0_coloring) max_color = std::max(max_color, c);

  RectangleSet cover;
  cover.kind = RectKind::cover;
  for (int color = 0; color <= max_color; ++color) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t pos = 0; pos < bundle.v0.size(); ++pos) {
      if (h0_coloring[pos] != color) continue;
      rows.push_back(bundle.v0[pos] / n);
      cols.push_back(bundle.v0[pos] % n);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (!rows.empty()) cover.rects.push_back({std::move(rows), std::move(cols)});
  }
  return cover;
}

std::string transform_output_to_json(const TransformOutput& out) {
  nlohmann::json j;
  j["case"] = out.case_tag;
  j["graph"] = nlohmann::json::parse(graph_to_json(out.g));
  j["bp_certificate"] = nlohmann::json::parse(covering_to_json(out.bp_certificate));
  j["chi_threshold"] = out.chi_threshold;
  j["k"] = out.k;
  j["m"] = out.m;
  j["degree"] = out.degree;
  nlohmann::json vmap = nlohmann::json::array();
  for (const auto& [i, jj, b] : out.vertex_map) vmap.push_back({i, jj, b});
  j["vertex_map"] = std::move(vmap);
  return j.dump();
}

TransformOutput transform_output_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TransformOutput out;
  out.case_tag = j.at("case").get<int>();
  out.g = graph_from_json(j.at("graph").dump());
  out.bp_certificate = covering_from_json(j.at("bp_certificate").dump());
  out.chi_threshold = j.at("chi_threshold").get<std::size_t>();
  out.k = j.at("k").get<std::size_t>();
  out.m = j.at("m").get<std::size_t>();
  out.degree = j.at("degree").get<std::size_t>();
  for (const auto& row : j.at("vertex_map")) {
    out.vertex_map.push_back({row.at(0).get<std::size_t>(), row.at(1).get<std::size_t>(),
                              row.at(2).get<std::size_t>()});
  }
  return out;
}

}  // namespace binrank
