#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbcap/plumbing.hpp"

namespace plumbcap {

using HoleId = std::size_t;

struct Hole {
  HoleId id;
  VertexId vertex;
};

enum class CurveKind { Boundary, Edge };

/// A right-handed Dehn twist curve on the planar page, recorded by the set of
/// holes it encircles.
struct TwistCurve {
  CurveKind kind;
  std::optional<Edge> edge; // set for CurveKind::Edge
  std::vector<HoleId> holes;
};

/// Planar open book for the Milnor fillable structure: a sphere with
/// -e_v - d_v holes near each vertex, one twist curve parallel to each hole
/// and one around each edge. The monodromy is the product of all twists.
struct OpenBookDescription {
  std::vector<Hole> holes;
  std::vector<TwistCurve> curves;
  // Edge curves encircle the side of each edge away from this vertex.
  VertexId reference_vertex = 0;
  int page_genus = 0;

  std::size_t binding_components() const noexcept { return holes.size(); }

  /// {"holes":[{"id","vertex"}...], "curves":[{"kind","edge"?,"holes"}...]}
  nlohmann::json to_json() const;
};

/// Throws ValidationError unless validate(g) passes. Edge curves take the side
/// away from choose_root(g).
OpenBookDescription build_open_book(const PlumbingGraph &g);

/// Number of twist curves separating `hole` from `outer`.
/// Throws Error if the two are equal or unknown.
std::size_t curves_crossed(const OpenBookDescription &ob, HoleId hole, HoleId outer);

} // namespace plumbcap
