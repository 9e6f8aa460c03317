// Command-line surface for the rank / gadget / graph toolkit. Exit codes:
// 0 success, 1 verification failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binrank/boolfn.hpp"
#include "binrank/entropy.hpp"
#include "binrank/gadget.hpp"
#include "binrank/graph.hpp"
#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"
#include "binrank/transform.hpp"

namespace {

using namespace binrank;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

Gadget make_gadget(const std::string& kind, int ell) {
  if (kind == "gl") return gadget_gl(ell);
  if (kind == "ip") return gadget_ip(ell);
  throw std::runtime_error("unknown gadget '" + kind + "', expected gl or ip");
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

std::uint32_t parse_bits(const std::string& text) {
  std::uint32_t out = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::runtime_error("bit string must be over {0,1}");
    out = (out << 1) | (ch == '1');
  }
  return out;
}

std::vector<int> parse_block_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  std::sort(out.begin(), out.end());
  return out;
}

struct Options {
  // rank
  std::string rank_mode, rank_matrix, rank_cert;
  std::size_t budget = kDefaultNodeBudget;
  // compose / lift-partition
  std::string f_path, gadget_kind = "gl", out_path, dnf_path;
  int ell = 1;
  // gadget
  std::string check;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  bool parallel = false;
  // boolfn
  std::string tt_path;
  // transform
  std::string transform_matrix;
  std::optional<std::size_t> supplied_m;
  // verify
  std::string what, v_matrix, v_cert, v_graph, v_covering, v_transform;
  // graph
  std::string graph_op, graph_path, graph_cert;
  // gen
  std::size_t gen_n = 0, gen_d = 0;
  std::uint64_t gen_seed = 1;
  // entropy
  std::string ent_tool, ent_z, ent_delta = "1/2", ent_set = "1";
  int ent_blocks = 1;
};

void warn_unlimited(std::size_t budget) {
  if (budget == 0) {
    std::cerr << "warning: --budget 0 removes the node budget; exact search may run for a"
                 " long time on hard inputs\n";
  }
}

int run_rank(const Options& opt) {
  warn_unlimited(opt.budget);
  const BoolMatrix m = read_matrix_file(opt.rank_matrix);
  if (opt.rank_mode == "real") {
    std::cout << real_rank(m) << "\n";
    return 0;
  }
  const RankResult result = opt.rank_mode == "binary" ? binary_rank(m, opt.budget)
                                                      : boolean_rank(m, opt.budget);
  std::cout << result.value;
  if (!result.optimal) std::cout << " (upper bound, budget exhausted)";
  std::cout << "\n";
  if (!opt.rank_cert.empty()) {
    write_file(opt.rank_cert, rectangle_set_to_json(result.certificate));
  }
  return 0;
}

int run_compose(const Options& opt) {
  const TruthTable f = read_truth_table_file(opt.f_path);
  const Gadget g = make_gadget(opt.gadget_kind, opt.ell);
  write_file(opt.out_path, serialize_matrix(compose(f, g)));
  return 0;
}

int run_gadget(const Options& opt) {
  const Gadget g = make_gadget(opt.gadget_kind, opt.ell);
  if (opt.check == "unbiased") {
    const bool ok = is_strongly_unbiased(g);
    std::cout << (ok ? "strongly unbiased, degree " + std::to_string(g.side() / 2)
                     : "not strongly unbiased")
              << "\n";
    return ok ? 0 : 1;
  }
  if (opt.check == "disc") {
    Rational disc;
    if (g.side() <= 16) {
      disc = discrepancy_exact(g, opt.parallel);
      std::cout << "disc = " << disc << " (exact)\n";
    } else {
      disc = discrepancy_sample(g, opt.trials, opt.seed);
      std::cout << "disc >= " << disc << " (sampled lower bound, " << opt.trials
                << " trials)\n";
    }
    std::cout << "bound 2^-(" << opt.ell << "+3)/2\n";
    const bool ok = within_discrepancy_bound(disc, opt.ell);
    std::cout << (ok ? "within bound" : "bound violated") << "\n";
    return ok ? 0 : 1;
  }
  if (opt.check == "lindsey") {
    const bool ok = lindsey_check(hadamard(opt.ell));
    std::cout << (ok ? "lindsey bound holds" : "lindsey bound violated") << "\n";
    return ok ? 0 : 1;
  }
  throw std::runtime_error("unknown check '" + opt.check + "'");
}

int run_boolfn(const Options& opt) {
  const TruthTable f = read_truth_table_file(opt.tt_path);
  std::cout << "C1=" << c1(f) << " C0=" << c0(f) << " UC1=" << uc1(f) << "\n";
  return 0;
}

int run_lift_partition(const Options& opt) {
  const Dnf phi = dnf_from_json(read_file(opt.dnf_path));
  const Gadget g = make_gadget(opt.gadget_kind, opt.ell);
  const RectangleSet cert = lifted_partition(phi, g);
  std::cout << cert.rects.size() << " rectangles\n";
  write_file(opt.out_path, rectangle_set_to_json(cert));
  return 0;
}

int run_transform(const Options& opt) {
  warn_unlimited(opt.budget);
  const BoolMatrix m = read_matrix_file(opt.transform_matrix);
  SolveBudgets budgets;
  budgets.rank_nodes = opt.budget;
  const TransformOutput out = transform(m, budgets, opt.supplied_m);
  std::cout << "case " << out.case_tag << ", k=" << out.k << ", m=" << out.m
            << ", degree=" << out.degree << ", chi_threshold=" << out.chi_threshold
            << ", bicliques=" << out.bp_certificate.bicliques.size() << "\n";
  write_file(opt.out_path, transform_output_to_json(out));
  return 0;
}

int run_verify(const Options& opt) {
  if (opt.what == "rectangles") {
    const BoolMatrix m = read_matrix_file(opt.v_matrix);
    const RectangleSet s = rectangle_set_from_json(read_file(opt.v_cert));
    const bool ok = verify_rectangles(m, s);
    std::cout << (ok ? "OK" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }
  if (opt.what == "covering") {
    const Graph g = graph_from_json(read_file(opt.v_graph));
    const BicliqueCovering c = covering_from_json(read_file(opt.v_covering));
    const bool ok = verify_covering(g, c);
    std::cout << (ok ? "OK" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }
  if (opt.what == "transform") {
    const BoolMatrix m = read_matrix_file(opt.v_matrix);
    const TransformOutput out = transform_output_from_json(read_file(opt.v_transform));
    const TransformReport report = verify_output(m, out);
    for (const auto& check : report.checks) {
      std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": " << check.detail
                << "\n";
    }
    std::cout << (report.pass ? "OK" : "FAIL") << "\n";
    return report.pass ? 0 : 1;
  }
  throw std::runtime_error("unknown verification target '" + opt.what + "'");
}

int run_graph(const Options& opt) {
  const Graph g = graph_from_json(read_file(opt.graph_path));
  if (opt.graph_op == "chi") {
    std::cout << chromatic_number(g).chi << "\n";
    return 0;
  }
  if (opt.graph_op == "bp") {
    warn_unlimited(opt.budget);
    const BpResult result = bp_exact(g, opt.budget);
    std::cout << result.value;
    if (!result.optimal) std::cout << " (upper bound, budget exhausted)";
    std::cout << "\n";
    if (!opt.graph_cert.empty()) {
      write_file(opt.graph_cert, covering_to_json(result.certificate));
    }
    return 0;
  }
  throw std::runtime_error("unknown graph operation '" + opt.graph_op + "'");
}

int run_gen(const Options& opt) {
  const BoolMatrix m = random_regular(opt.gen_n, opt.gen_d, opt.gen_seed);
  write_file(opt.out_path, serialize_matrix(m));
  return 0;
}

int run_entropy(const Options& opt) {
  const Gadget g = make_gadget(opt.gadget_kind, opt.ell);
  const std::uint32_t z = parse_bits(opt.ent_z);
  const BlockDistribution d = fiber_distribution(g, opt.ent_blocks, z);
  if (opt.ent_tool == "fiber") {
    const MinEntropy me = min_entropy(d);
    std::cout << "support " << d.weights.size() << ", max probability " << me.max_prob
              << ", min-entropy " << me.bits << " bits\n";
    return 0;
  }
  if (opt.ent_tool == "dense") {
    const DensityCheck check = is_delta_dense(d, parse_rational(opt.ent_delta));
    if (check.dense) {
      std::cout << "dense\n";
      return 0;
    }
    std::cout << "not dense, violating blocks:";
    for (int b : check.violating_blocks) std::cout << " " << b;
    std::cout << "\n";
    return 1;
  }
  if (opt.ent_tool == "gap") {
    const Rational gap = uniformity_gap(d, g, parse_block_list(opt.ent_set));
    std::cout << "uniformity gap " << gap << "\n";
    return 0;
  }
  if (opt.ent_tool == "restrict") {
    const DenseRestriction r = find_dense_restriction(d, parse_rational(opt.ent_delta));
    std::cout << "fixed blocks:";
    for (int b : r.fixed_blocks) std::cout << " " << b;
    if (r.fixed_blocks.empty()) std::cout << " (none)";
    std::cout << "\nconditioned support " << r.conditioned.weights.size() << "\n";
    return 0;
  }
  throw std::runtime_error("unknown entropy subtool '" + opt.ent_tool + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"exact rank, gadget, and biclique toolkit"};
  app.require_subcommand(1);
  app.add_flag("--parallel", opt.parallel, "enable deterministic parallel modes");

  auto* rank = app.add_subcommand("rank", "real, binary, or Boolean rank of a matrix");
  rank->add_option("--mode", opt.rank_mode, "real|binary|boolean")->required();
  rank->add_option("matrix", opt.rank_matrix, "matrix file")->required();
  rank->add_option("--budget", opt.budget, "search-node budget, 0 = unlimited");
  rank->add_option("--cert", opt.rank_cert, "write the certificate JSON here");

  auto* compose_cmd = app.add_subcommand("compose", "matrix of a composed function");
  compose_cmd->add_option("--f", opt.f_path, "truth-table file")->required();
  compose_cmd->add_option("--gadget", opt.gadget_kind, "gl|ip");
  compose_cmd->add_option("--ell", opt.ell, "block length")->required();
  compose_cmd->add_option("-o,--out", opt.out_path, "output matrix file")->required();

  auto* gadget_cmd = app.add_subcommand("gadget", "gadget diagnostics");
  gadget_cmd->add_option("--ell", opt.ell, "block length")->required();
  gadget_cmd->add_option("--check", opt.check, "unbiased|disc|lindsey")->required();
  gadget_cmd->add_option("--gadget", opt.gadget_kind, "gl|ip");
  gadget_cmd->add_option("--trials", opt.trials, "sampling trials for large gadgets");
  gadget_cmd->add_option("--seed", opt.seed, "sampling seed");

  auto* boolfn_cmd = app.add_subcommand("boolfn", "certificate measures of a function");
  boolfn_cmd->add_subcommand("measures", "print C1, C0, UC1")
      ->add_option("table", opt.tt_path, "truth-table file")
      ->required();

  auto* lift = app.add_subcommand("lift-partition", "rectangle partition from a DNF");
  lift->add_option("--dnf", opt.dnf_path, "DNF JSON file")->required();
  lift->add_option("--gadget", opt.gadget_kind, "gl|ip");
  lift->add_option("--ell", opt.ell, "block length")->required();
  lift->add_option("-o,--out", opt.out_path, "output certificate JSON")->required();

  auto* transform_cmd = app.add_subcommand("transform", "matrix to regular graph pipeline");
  transform_cmd->add_option("matrix", opt.transform_matrix, "matrix file")->required();
  transform_cmd->add_option("--m", opt.supplied_m, "Boolean rank of the complement, if known");
  transform_cmd->add_option("--budget", opt.budget, "search-node budget");
  transform_cmd->add_option("-o,--out", opt.out_path, "output JSON")->required();

  auto* verify = app.add_subcommand("verify", "re-check emitted certificates");
  verify->add_option("--what", opt.what, "rectangles|covering|transform")->required();
  verify->add_option("--matrix", opt.v_matrix, "matrix file");
  verify->add_option("--cert", opt.v_cert, "rectangle certificate JSON");
  verify->add_option("--graph", opt.v_graph, "graph JSON");
  verify->add_option("--covering", opt.v_covering, "covering JSON");
  verify->add_option("--transform", opt.v_transform, "transform output JSON");

  auto* graph_cmd = app.add_subcommand("graph", "chromatic number / biclique partition");
  graph_cmd->add_option("op", opt.graph_op, "chi|bp")->required();
  graph_cmd->add_option("graph", opt.graph_path, "graph JSON file")->required();
  graph_cmd->add_option("--budget", opt.budget, "search-node budget");
  graph_cmd->add_option("--cert", opt.graph_cert, "write the covering JSON here");

  auto* gen = app.add_subcommand("gen", "random regular matrix");
  gen->add_option("--n", opt.gen_n, "side")->required();
  gen->add_option("--d", opt.gen_d, "degree")->required();
  gen->add_option("--seed", opt.gen_seed, "seed");
  gen->add_option("-o,--out", opt.out_path, "output matrix file")->required();

  auto* entropy_cmd = app.add_subcommand("entropy", "fiber-distribution instruments");
  entropy_cmd->add_option("tool", opt.ent_tool, "fiber|dense|gap|restrict")->required();
  entropy_cmd->add_option("--ell", opt.ell, "block length")->required();
  entropy_cmd->add_option("--blocks", opt.ent_blocks, "number of blocks")->required();
  entropy_cmd->add_option("--z", opt.ent_z, "target bit string, one bit per block")->required();
  entropy_cmd->add_option("--gadget", opt.gadget_kind, "gl|ip");
  entropy_cmd->add_option("--delta", opt.ent_delta, "density parameter, e.g. 1/2");
  entropy_cmd->add_option("--set", opt.ent_set, "comma-separated block list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rank->parsed()) return run_rank(opt);
    if (compose_cmd->parsed()) return run_compose(opt);
    if (gadget_cmd->parsed()) return run_gadget(opt);
    if (boolfn_cmd->parsed()) return run_boolfn(opt);
    if (lift->parsed()) return run_lift_partition(opt);
    if (transform_cmd->parsed()) return run_transform(opt);
    if (verify->parsed()) return run_verify(opt);
    if (graph_cmd->parsed()) return run_graph(opt);
    if (gen->parsed()) return run_gen(opt);
    if (entropy_cmd->parsed()) return run_entropy(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
