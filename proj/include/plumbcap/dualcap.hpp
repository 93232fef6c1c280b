#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbcap/intlin.hpp"
#include "plumbcap/plumbing.hpp"

namespace plumbcap {

/// One strand of the dual braid, attached to a binding component near
/// `vertex` other than the outer one.
struct DualString {
  std::string label; // "u<vertex>#<k>"
  VertexId vertex;
  std::size_t distance; // edges between vertex and the root
  std::int64_t framing; // -distance - 2
};

struct DualConfiguration {
  VertexId root;
  std::vector<DualString> strings;
  GramMatrix gram;

  /// {"root":int, "strings":[{"label","vertex","distance","framing"}...]}
  nlohmann::json strings_json() const;
};

/// Vertices with -e_v - d_v > 0, ascending.
std::vector<VertexId> admissible_roots(const PlumbingGraph &g);

/// The vertex maximising -e_v - d_v, smallest id on ties.
/// Throws NoAdmissibleRoot when that maximum is not positive.
VertexId choose_root(const PlumbingGraph &g);

/// Strings: -e_u - d_u per vertex u, one fewer at the root. The twist boxes
/// are one global box plus, for each edge, a box around the strings cut off
/// from the root by that edge. Two strings link once negatively per shared
/// box; a string's framing is -(boxes it passes) - 1.
///
/// Throws ValidationError if g does not validate and NoAdmissibleRoot if
/// `root` has -e_root - d_root <= 0.
DualConfiguration build_dual(const PlumbingGraph &g, VertexId root);

/// build_dual at choose_root.
GramMatrix dual_gram(const PlumbingGraph &g);

/// Upper bound on strings we are willing to materialise.
inline constexpr std::size_t kMaxDualStrings = 4096;

} // namespace plumbcap
