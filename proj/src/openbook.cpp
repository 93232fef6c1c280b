#include "plumbcap/openbook.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "plumbcap/dualcap.hpp"
#include "plumbcap/errors.hpp"

namespace plumbcap {

namespace {

// Vertices reachable from `start` without crossing `cut`.
std::set<VertexId> component_without(const PlumbingGraph &g, VertexId start, Edge cut) {
  std::set<VertexId> seen{start};
  std::vector<VertexId> stack{start};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbours(v)) {
      if (Edge(std::minmax(v, w)) == cut || !seen.insert(w).second)
        continue;
      stack.push_back(w);
    }
  }
  return seen;
}

} // namespace

nlohmann::json OpenBookDescription::to_json() const {
  nlohmann::json holes_json = nlohmann::json::array();
  for (const auto &h : holes)
    holes_json.push_back({{"id", h.id}, {"vertex", h.vertex}});
  nlohmann::json curves_json = nlohmann::json::array();
  for (const auto &c : curves) {
    nlohmann::json entry;
    entry["kind"] = c.kind == CurveKind::Boundary ? "boundary" : "edge";
    if (c.edge)
      entry["edge"] = {c.edge->first, c.edge->second};
    entry["holes"] = c.holes;
    curves_json.push_back(std::move(entry));
  }
  return {{"holes", std::move(holes_json)}, {"curves", std::move(curves_json)}};
}

OpenBookDescription build_open_book(const PlumbingGraph &g) {
  require_valid(g);
  OpenBookDescription ob;
  ob.reference_vertex = choose_root(g);

  std::map<VertexId, std::vector<HoleId>> owned;
  for (auto id : g.vertex_ids()) {
    const auto count = to_int64(g.excess(id));
    for (std::int64_t k = 0; k < count; ++k) {
      const HoleId hole = ob.holes.size();
      ob.holes.push_back({hole, id});
      owned[id].push_back(hole);
    }
  }
  for (const auto &h : ob.holes)
    ob.curves.push_back({CurveKind::Boundary, std::nullopt, {h.id}});

  for (const auto &edge : g.edges()) {
    const auto root_side = component_without(g, ob.reference_vertex, edge);
    TwistCurve curve{CurveKind::Edge, edge, {}};
    for (const auto &h : ob.holes)
      if (!root_side.count(h.vertex))
        curve.holes.push_back(h.id);
    ob.curves.push_back(std::move(curve));
  }
  return ob;
}

std::size_t curves_crossed(const OpenBookDescription &ob, HoleId hole, HoleId outer) {
  if (hole == outer)
    throw Error("curves_crossed needs two distinct holes");
  if (hole >= ob.holes.size() || outer >= ob.holes.size())
    throw Error("unknown hole id");
  std::size_t count = 0;
  for (const auto &c : ob.curves) {
    const bool has_hole = std::binary_search(c.holes.begin(), c.holes.end(), hole);
    const bool has_outer = std::binary_search(c.holes.begin(), c.holes.end(), outer);
    if (has_hole != has_outer)
      ++count;
  }
  return count;
}

} // namespace plumbcap
