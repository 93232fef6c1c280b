// plumbcap: plumbing graphs, their dual configurations and the diagonal
// lattice embedding obstruction.
//
// Exit status: 0 success, 1 inconclusive (with --fail-on-inconclusive),
// 2 usage error, 3 invalid input, 4 search budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "plumbcap/dualcap.hpp"
#include "plumbcap/embedder.hpp"
#include "plumbcap/errors.hpp"
#include "plumbcap/intlin.hpp"
#include "plumbcap/openbook.hpp"
#include "plumbcap/pipeline.hpp"
#include "plumbcap/plumbing.hpp"

using namespace plumbcap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBudget = 4;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool looks_like_json(const std::string &text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

GramMatrix read_gram(const std::string &text) {
  try {
    return GramMatrix::from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("bad gram JSON: ") + e.what());
  }
}

// Gram JSON as is, or the plumbing form of a graph file.
GramMatrix read_gram_or_graph(const std::string &text) {
  if (looks_like_json(text))
    return read_gram(text);
  return gram_matrix(parse_plumbing(text));
}

std::string matrix_text(const GramMatrix &q) {
  std::ostringstream out;
  for (std::size_t i = 0; i < q.rank(); ++i) {
    out << q.labels()[i] << ":";
    for (std::size_t j = 0; j < q.rank(); ++j)
      out << ' ' << q(i, j);
    out << '\n';
  }
  return out.str();
}

std::string bits_text(const WuClass &w) {
  std::string s;
  for (auto b : w.coefficients)
    s += b ? '1' : '0';
  return s;
}

struct Common {
  std::string input = "-";
  bool json = false;
};

struct SearchFlags {
  std::optional<std::uint64_t> budget_nodes;
  std::optional<std::int64_t> budget_ms;
  unsigned threads = 1;
  bool no_timings = false;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = budget_nodes;
    if (!b.max_nodes) {
      if (const char *env = std::getenv("PLUMBCAP_BUDGET_NODES"); env && *env) {
        try {
          b.max_nodes = std::stoull(env);
        } catch (const std::exception &) {
          throw UsageError("PLUMBCAP_BUDGET_NODES must be a nonnegative integer");
        }
      }
    }
    if (budget_ms)
      b.max_time = std::chrono::milliseconds(*budget_ms);
    return b;
  }
};

void add_search_flags(CLI::App *cmd, SearchFlags &flags) {
  cmd->add_option("--budget-nodes", flags.budget_nodes,
                  "Node limit (default: $PLUMBCAP_BUDGET_NODES, else unlimited)");
  cmd->add_option("--budget-ms", flags.budget_ms, "Wall-clock limit in milliseconds")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", flags.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_flag("--no-timings", flags.no_timings, "Omit timings for reproducible output");
}

int run_validate(const Common &c) {
  const auto g = parse_plumbing(read_input(c.input));
  const auto report = validate(g);
  if (c.json) {
    std::cout << nlohmann::json{{"is_tree", report.is_tree},
                                {"negative_definite", report.negative_definite},
                                {"reduced_fundamental_cycle", report.reduced_fundamental_cycle},
                                {"offending_vertices", report.offending_vertices}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << (report.ok() ? "valid: " : "invalid: ") << report.summary() << '\n';
  }
  return report.ok() ? kExitOk : kExitInvalid;
}

int run_gram(const Common &c) {
  const auto q = gram_matrix(parse_plumbing(read_input(c.input)));
  if (c.json)
    std::cout << q.to_json().dump() << '\n';
  else
    std::cout << matrix_text(q);
  return kExitOk;
}

int run_openbook(const Common &c) {
  const auto ob = build_open_book(parse_plumbing(read_input(c.input)));
  if (c.json) {
    std::cout << ob.to_json().dump() << '\n';
    return kExitOk;
  }
  std::cout << "page genus " << ob.page_genus << ", " << ob.binding_components()
            << " binding components\n";
  for (const auto &h : ob.holes)
    std::cout << "hole " << h.id << " at vertex " << h.vertex << '\n';
  for (const auto &curve : ob.curves) {
    if (curve.kind == CurveKind::Boundary) {
      std::cout << "twist around hole " << curve.holes.front() << '\n';
      continue;
    }
    std::cout << "twist for edge " << curve.edge->first << "-" << curve.edge->second
              << " around {";
    for (std::size_t i = 0; i < curve.holes.size(); ++i)
      std::cout << (i ? "," : "") << curve.holes[i];
    std::cout << "}\n";
  }
  return kExitOk;
}

int run_dual(const Common &c, std::optional<VertexId> root) {
  const auto g = parse_plumbing(read_input(c.input));
  const auto dual = build_dual(g, root ? *root : choose_root(g));
  if (c.json) {
    auto doc = dual.gram.to_json();
    doc.update(dual.strings_json());
    std::cout << doc.dump() << '\n';
    return kExitOk;
  }
  std::cout << "root " << dual.root << ", rank " << dual.gram.rank() << '\n';
  for (const auto &s : dual.strings)
    std::cout << s.label << " vertex " << s.vertex << " distance " << s.distance
              << " framing " << s.framing << '\n';
  std::cout << matrix_text(dual.gram);
  return kExitOk;
}

int report_embedding(const EmbeddingOutcome &out, const Common &c, bool timings) {
  if (c.json) {
    std::cout << out.to_json(timings).dump() << '\n';
  } else if (!out.stats.completed) {
    std::cout << "undecided: budget exhausted after " << out.stats.nodes << " nodes\n";
  } else {
    std::cout << (out.embeddable ? "embeddable" : "not embeddable") << " (" << out.stats.nodes
              << " nodes)\n";
    if (out.witness)
      for (const auto &row : *out.witness) {
        for (std::size_t k = 0; k < row.size(); ++k)
          std::cout << (k ? " " : "") << row[k];
        std::cout << '\n';
      }
  }
  return out.stats.completed ? kExitOk : kExitBudget;
}

int run_embed(const Common &c, std::optional<std::size_t> rank, bool naive,
              const SearchFlags &flags) {
  const auto q = read_gram(read_input(c.input));
  const std::size_t target = rank ? *rank : q.rank();
  const auto out = naive ? naive_embed_oracle(q, target)
                         : embed_diagonal(q, target, flags.budget(), flags.threads);
  return report_embedding(out, c, !flags.no_timings);
}

int run_wu(const Common &c) {
  const auto q = read_gram_or_graph(read_input(c.input));
  const auto classes = wu_classes(q);
  if (c.json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &w : classes)
      list.push_back(w.coefficients);
    std::cout << nlohmann::json{{"labels", q.labels()}, {"wu_classes", list}}.dump() << '\n';
    return kExitOk;
  }
  std::cout << classes.size() << " characteristic vector(s) over " << q.rank() << " labels\n";
  for (const auto &w : classes) {
    std::cout << bits_text(w) << "  {";
    bool first = true;
    for (std::size_t i = 0; i < w.coefficients.size(); ++i)
      if (w.coefficients[i]) {
        std::cout << (first ? "" : ",") << q.labels()[i];
        first = false;
      }
    std::cout << "}\n";
  }
  return kExitOk;
}

int run_mubar(const Common &c) {
  const auto q = read_gram_or_graph(read_input(c.input));
  const auto value = mu_bar(q);
  if (c.json)
    std::cout << nlohmann::json{{"mu_bar", big_to_json(value)}}.dump() << '\n';
  else
    std::cout << value << '\n';
  return kExitOk;
}

int run_obstruct(const Common &c, const ObstructionOptions &opts, const SearchFlags &flags,
                 bool fail_on_inconclusive) {
  const auto g = parse_plumbing(read_input(c.input));
  const auto report = qhd_obstruction(g, opts);
  const bool timings = !flags.no_timings;
  if (c.json) {
    std::cout << report.to_json(timings).dump(2) << '\n';
  } else {
    std::cout << "graph: " << report.vertex_count << " vertices, " << report.edge_count
              << " edges\n";
    std::cout << "det(Q_gamma) = " << report.det_gamma << '\n';
    if (report.spin)
      std::cout << "wu class " << bits_text(report.spin->wu) << ", mu_bar "
                << report.spin->mu_bar << '\n';
    for (const auto &r : report.roots) {
      std::cout << "root " << r.root << ": dual rank " << r.dual_rank << ", "
                << to_string(r.verdict) << " (" << r.outcome.stats.nodes << " nodes";
      if (timings)
        std::cout << ", " << r.outcome.stats.elapsed.count() << " ms";
      std::cout << ")\n";
    }
    std::cout << "verdict: " << to_string(report.overall()) << '\n';
  }
  switch (report.overall()) {
  case Verdict::Obstructed:
    return kExitOk;
  case Verdict::Undecided:
    return kExitBudget;
  case Verdict::Inconclusive:
    return fail_on_inconclusive ? kExitInconclusive : kExitOk;
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Plumbing trees, dual configurations and the diagonal lattice obstruction"};
  app.require_subcommand(1);

  Common common;
  SearchFlags flags;
  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("input", common.input, "Input file, or - for standard input");
    cmd->add_flag("--json", common.json, "Machine-readable JSON output");
  };

  auto *validate_cmd = app.add_subcommand("validate", "Check tree, definiteness and valency bounds");
  add_common(validate_cmd);
  auto *gram_cmd = app.add_subcommand("gram", "Intersection form of a plumbing graph");
  add_common(gram_cmd);
  auto *openbook_cmd = app.add_subcommand("openbook", "Planar open book description");
  add_common(openbook_cmd);

  std::optional<VertexId> root;
  auto *dual_cmd = app.add_subcommand("dual", "Dual configuration strings and form");
  add_common(dual_cmd);
  dual_cmd->add_option("--root", root, "Distinguished vertex (default: chosen automatically)");

  std::optional<std::size_t> rank;
  bool naive = false;
  auto *embed_cmd = app.add_subcommand("embed", "Embed a gram JSON into the diagonal lattice");
  add_common(embed_cmd);
  embed_cmd->add_option("--rank", rank, "Target rank (default: rank of the form)")
      ->check(CLI::PositiveNumber);
  embed_cmd->add_flag("--naive", naive, "Use the unreduced reference enumeration");
  add_search_flags(embed_cmd, flags);

  auto *wu_cmd = app.add_subcommand("wu", "Characteristic (Wu) vectors mod 2");
  add_common(wu_cmd);
  auto *mubar_cmd = app.add_subcommand("mubar", "sigma - w^T Q w for the unique Wu class");
  add_common(mubar_cmd);

  ObstructionOptions opts;
  bool fail_on_inconclusive = false;
  auto *obstruct_cmd = app.add_subcommand("obstruct", "Rational homology disk obstruction");
  add_common(obstruct_cmd);
  obstruct_cmd->add_option("--root", opts.root, "Distinguished vertex");
  obstruct_cmd->add_flag("--all-roots", opts.all_roots, "Try every admissible root");
  obstruct_cmd->add_flag("--fail-on-inconclusive", fail_on_inconclusive,
                         "Exit 1 when an embedding exists");
  add_search_flags(obstruct_cmd, flags);

  int family_n = 0;
  auto *gamma_cmd = app.add_subcommand("gamma-n", "Print the graph Gamma_n");
  gamma_cmd->add_option("n", family_n, "Family parameter (n >= 2)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd)
      return run_validate(common);
    if (*gram_cmd)
      return run_gram(common);
    if (*openbook_cmd)
      return run_openbook(common);
    if (*dual_cmd)
      return run_dual(common, root);
    if (*embed_cmd)
      return run_embed(common, rank, naive, flags);
    if (*wu_cmd)
      return run_wu(common);
    if (*mubar_cmd)
      return run_mubar(common);
    if (*obstruct_cmd) {
      opts.budget = flags.budget();
      opts.threads = flags.threads;
      return run_obstruct(common, opts, flags, fail_on_inconclusive);
    }
    if (*gamma_cmd) {
      std::cout << serialize_plumbing(generate_gamma_n(family_n));
      return kExitOk;
    }
  } catch (const UsageError &e) {
    std::cerr << "plumbcap: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error &e) {
    std::cerr << "plumbcap: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}
