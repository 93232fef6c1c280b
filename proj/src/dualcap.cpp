#include "plumbcap/dualcap.hpp"

#include <map>

#include "plumbcap/errors.hpp"

namespace plumbcap {

namespace {

struct RootedTree {
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, std::size_t> depth;
};

RootedTree root_tree(const PlumbingGraph &g, VertexId root) {
  RootedTree tree;
  tree.depth[root] = 0;
  std::vector<VertexId> stack{root};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbours(v)) {
      if (tree.depth.count(w))
        continue;
      tree.parent[w] = v;
      tree.depth[w] = tree.depth[v] + 1;
      stack.push_back(w);
    }
  }
  return tree;
}

// Edges shared by the paths u->root and w->root: the depth of their meeting
// point.
std::size_t shared_path_length(const RootedTree &tree, VertexId u, VertexId w) {
  std::size_t du = tree.depth.at(u), dw = tree.depth.at(w);
  while (du > dw) {
    u = tree.parent.at(u);
    --du;
  }
  while (dw > du) {
    w = tree.parent.at(w);
    --dw;
  }
  while (u != w) {
    u = tree.parent.at(u);
    w = tree.parent.at(w);
    --du;
  }
  return du;
}

} // namespace

nlohmann::json DualConfiguration::strings_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto &s : strings)
    list.push_back({{"label", s.label},
                    {"vertex", s.vertex},
                    {"distance", s.distance},
                    {"framing", s.framing}});
  return {{"root", root}, {"strings", std::move(list)}};
}

std::vector<VertexId> admissible_roots(const PlumbingGraph &g) {
  std::vector<VertexId> roots;
  for (auto id : g.vertex_ids())
    if (g.excess(id) > 0)
      roots.push_back(id);
  return roots;
}

VertexId choose_root(const PlumbingGraph &g) {
  if (g.vertex_count() == 0)
    throw NoAdmissibleRoot("empty graph has no root");
  const auto ids = g.vertex_ids();
  VertexId best = ids.front();
  BigInt best_excess = g.excess(best);
  for (auto id : ids) {
    const BigInt excess = g.excess(id);
    if (excess > best_excess) {
      best = id;
      best_excess = excess;
    }
  }
  if (best_excess <= 0)
    throw NoAdmissibleRoot("no vertex has -e_v - d_v > 0");
  return best;
}

DualConfiguration build_dual(const PlumbingGraph &g, VertexId root) {
  require_valid(g);
  if (!g.has_vertex(root) || g.excess(root) <= 0)
    throw NoAdmissibleRoot("vertex " + std::to_string(root) +
                           " is not an admissible root");

  BigInt total = -1;
  for (auto id : g.vertex_ids())
    total += g.excess(id);
  if (total > BigInt(kMaxDualStrings))
    throw Error("dual configuration would have " + total.str() + " strings");

  const RootedTree tree = root_tree(g, root);
  std::vector<DualString> strings;
  for (auto id : g.vertex_ids()) {
    auto count = static_cast<std::size_t>(to_int64(g.excess(id)));
    if (id == root)
      --count;
    const std::size_t distance = tree.depth.at(id);
    for (std::size_t k = 0; k < count; ++k)
      strings.push_back({"u" + std::to_string(id) + "#" + std::to_string(k), id,
                         distance, -static_cast<std::int64_t>(distance) - 2});
  }

  const std::size_t n = strings.size();
  std::vector<std::vector<BigInt>> entries(n, std::vector<BigInt>(n));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(strings[i].label);
    entries[i][i] = strings[i].framing;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto shared = shared_path_length(tree, strings[i].vertex, strings[j].vertex);
      entries[i][j] = entries[j][i] = -1 - static_cast<std::int64_t>(shared);
    }
  }
  return {root, std::move(strings), GramMatrix(std::move(labels), std::move(entries))};
}

GramMatrix dual_gram(const PlumbingGraph &g) { return build_dual(g, choose_root(g)).gram; }

} // namespace plumbcap
