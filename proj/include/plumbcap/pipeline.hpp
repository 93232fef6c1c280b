#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbcap/dualcap.hpp"
#include "plumbcap/embedder.hpp"
#include "plumbcap/intlin.hpp"
#include "plumbcap/plumbing.hpp"

namespace plumbcap {

enum class Verdict {
  Obstructed,   // dual form does not embed: Y bounds no rational homology disk
  Inconclusive, // an embedding exists
  Undecided,    // search budget ran out
};

std::string to_string(Verdict v);

struct RootVerdict {
  VertexId root;
  std::size_t dual_rank;
  Verdict verdict;
  EmbeddingOutcome outcome;
};

struct SpinSection {
  WuClass wu;
  BigInt mu_bar;
};

struct ObstructionReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  ValidationReport validation;
  BigInt det_gamma;
  std::optional<SpinSection> spin; // present only when det_gamma is odd
  std::vector<RootVerdict> roots;
  std::chrono::milliseconds elapsed{0};

  /// Obstructed if any root is, else Undecided if any root is, else
  /// Inconclusive.
  Verdict overall() const;

  nlohmann::json to_json(bool include_timing = true) const;
};

struct ObstructionOptions {
  std::optional<VertexId> root;
  bool all_roots = false;
  SearchBudget budget;
  unsigned threads = 1;
};

/// validate -> root(s) -> dual configuration -> embedding search at the dual
/// rank. Throws ValidationError if the graph does not validate and
/// NoAdmissibleRoot for a bad explicit root.
ObstructionReport qhd_obstruction(const PlumbingGraph &g, const ObstructionOptions &opts);

/// JSON helper: integers that fit in 64 bits as numbers, otherwise strings.
nlohmann::json big_to_json(const BigInt &value);

} // namespace plumbcap
