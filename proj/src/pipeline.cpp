#include "plumbcap/pipeline.hpp"

#include <limits>

#include "plumbcap/errors.hpp"

namespace plumbcap {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Obstructed:
    return "OBSTRUCTED";
  case Verdict::Inconclusive:
    return "INCONCLUSIVE";
  case Verdict::Undecided:
    return "UNDECIDED";
  }
  return "?";
}

nlohmann::json big_to_json(const BigInt &value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min())
    return value.str();
  return static_cast<std::int64_t>(value);
}

Verdict ObstructionReport::overall() const {
  bool undecided = false;
  for (const auto &r : roots) {
    if (r.verdict == Verdict::Obstructed)
      return Verdict::Obstructed;
    undecided = undecided || r.verdict == Verdict::Undecided;
  }
  return undecided ? Verdict::Undecided : Verdict::Inconclusive;
}

nlohmann::json ObstructionReport::to_json(bool include_timing) const {
  nlohmann::json out;
  out["graph"] = {{"vertices", vertex_count}, {"edges", edge_count}};
  out["validation"] = {{"is_tree", validation.is_tree},
                       {"negative_definite", validation.negative_definite},
                       {"reduced_fundamental_cycle", validation.reduced_fundamental_cycle},
                       {"offending_vertices", validation.offending_vertices}};
  out["det_gamma"] = big_to_json(det_gamma);
  if (spin) {
    out["spin"] = {{"wu", spin->wu.coefficients}, {"mu_bar", big_to_json(spin->mu_bar)}};
  }
  nlohmann::json per_root = nlohmann::json::array();
  for (const auto &r : roots) {
    per_root.push_back({{"root", r.root},
                        {"dual_rank", r.dual_rank},
                        {"verdict", to_string(r.verdict)},
                        {"embedding", r.outcome.to_json(include_timing)}});
  }
  out["roots"] = std::move(per_root);
  out["verdict"] = to_string(overall());
  if (include_timing)
    out["millis"] = elapsed.count();
  return out;
}

ObstructionReport qhd_obstruction(const PlumbingGraph &g, const ObstructionOptions &opts) {
  const auto start = std::chrono::steady_clock::now();
  ObstructionReport report;
  report.vertex_count = g.vertex_count();
  report.edge_count = g.edge_count();
  report.validation = validate(g);
  if (!report.validation.ok())
    throw ValidationError("invalid plumbing graph: " + report.validation.summary());

  const GramMatrix q_gamma = gram_matrix(g);
  report.det_gamma = determinant(q_gamma);
  if (bit_test(report.det_gamma, 0)) {
    report.spin = SpinSection{wu_classes(q_gamma).front(), mu_bar(q_gamma)};
  }

  std::vector<VertexId> roots;
  if (opts.all_roots)
    roots = admissible_roots(g);
  else if (opts.root)
    roots = {*opts.root};
  else
    roots = {choose_root(g)};

  for (auto root : roots) {
    const DualConfiguration dual = build_dual(g, root);
    const std::size_t rank = dual.gram.rank();
    // The target has the same rank as the dual; an empty dual embeds trivially.
    EmbeddingOutcome outcome;
    if (rank == 0) {
      outcome.embeddable = true;
      outcome.witness = IntMatrix{};
      outcome.stats.completed = true;
    } else {
      outcome = embed_diagonal(dual.gram, rank, opts.budget, opts.threads);
    }
    Verdict verdict = Verdict::Undecided;
    if (outcome.stats.completed)
      verdict = outcome.embeddable ? Verdict::Inconclusive : Verdict::Obstructed;
    report.roots.push_back({root, rank, verdict, std::move(outcome)});
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

} // namespace plumbcap
