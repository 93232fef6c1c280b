#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbcap/intlin.hpp"

namespace plumbcap {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Limits for a lattice search. A default-constructed budget is unlimited.
struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;
  std::stop_token stop;

  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t limit) { return {limit, std::nullopt, {}}; }
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
  bool completed = false; // false: budget ran out or the search was cancelled
};

/// Result of asking whether Q embeds into the diagonal lattice r<-1>.
/// When embeddable, witness row i holds the coordinates of basis vector i and
/// sum_k witness[i][k] * witness[j][k] == -Q(i, j).
struct EmbeddingOutcome {
  bool embeddable = false;
  std::optional<IntMatrix> witness;
  SearchStats stats;

  /// {"embeddable":bool,"witness":[[int...]...]?,"nodes":int,"millis":int,
  ///  "completed":bool}. millis is written as 0 when include_timing is false.
  nlohmann::json to_json(bool include_timing = true) const;
};

/// Exhaustive search for an embedding of the negative definite form Q into
/// target_rank<-1>, modulo signed permutations of the target coordinates.
///
/// Rows are placed in order of decreasing |Q(i,i)|; each is enumerated column
/// by column with Cauchy-Schwarz pruning of the inner products that remain to
/// be met. Target columns whose histories coincide are kept sorted, and
/// columns not used yet are filled nonnegatively.
///
/// With threads > 1 the search tree is split after the first few rows. The
/// verdict does not depend on the thread count; which witness is reported
/// does.
///
/// Throws NotDefinite. An exhausted budget or a stop request yields
/// stats.completed == false and no verdict.
EmbeddingOutcome embed_diagonal(const GramMatrix &q, std::size_t target_rank,
                                const SearchBudget &budget, unsigned threads = 1);

/// True iff m has one row per basis vector, all rows of equal length, and
/// m m^T == -Q. Throws Error when the row count does not match.
bool verify_witness(const GramMatrix &q, const IntMatrix &m);

/// Plain depth-first enumeration, no symmetry reduction. Restricted to
/// rank <= 4, target_rank <= 4 and |Q(i,i)| <= 6; throws Error otherwise.
EmbeddingOutcome naive_embed_oracle(const GramMatrix &q, std::size_t target_rank);

} // namespace plumbcap
