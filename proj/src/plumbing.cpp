#include "plumbcap/plumbing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "plumbcap/errors.hpp"

namespace plumbcap {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
      ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
      ++pos;
    if (pos > start)
      tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

bool parse_id(std::string_view text, VertexId &out) {
  BigInt value;
  if (text.empty() || text.front() == '-' || !parse_decimal(text, value))
    return false;
  if (value > std::numeric_limits<VertexId>::max())
    return false;
  out = static_cast<VertexId>(value);
  return true;
}

// Vertices lying on a cycle: whatever survives repeatedly stripping leaves.
std::vector<VertexId> two_core(const PlumbingGraph &g) {
  std::map<VertexId, std::size_t> degree;
  std::deque<VertexId> leaves;
  for (auto id : g.vertex_ids()) {
    degree[id] = g.valency(id);
    if (degree[id] <= 1)
      leaves.push_back(id);
  }
  std::set<VertexId> removed;
  while (!leaves.empty()) {
    const VertexId v = leaves.front();
    leaves.pop_front();
    if (!removed.insert(v).second)
      continue;
    for (auto w : g.neighbours(v))
      if (!removed.count(w) && --degree[w] == 1)
        leaves.push_back(w);
  }
  std::vector<VertexId> core;
  for (auto id : g.vertex_ids())
    if (!removed.count(id))
      core.push_back(id);
  return core;
}

} // namespace

void PlumbingGraph::add_vertex(VertexId id, BigInt framing) {
  if (!framings_.emplace(id, std::move(framing)).second)
    throw ValidationError("duplicate vertex id " + std::to_string(id));
  adjacency_[id];
}

void PlumbingGraph::add_edge(VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw ValidationError("edge " + std::to_string(u) + " " + std::to_string(v) +
                          " references an unknown vertex");
  if (u == v)
    throw ValidationError("self-loop at vertex " + std::to_string(u));
  const Edge edge = std::minmax(u, v);
  if (!edges_.insert(edge).second)
    throw ValidationError("duplicate edge " + std::to_string(edge.first) + " " +
                          std::to_string(edge.second));
  adjacency_[u].insert(v);
  adjacency_[v].insert(u);
}

const BigInt &PlumbingGraph::framing(VertexId id) const {
  auto it = framings_.find(id);
  if (it == framings_.end())
    throw ValidationError("unknown vertex " + std::to_string(id));
  return it->second;
}

std::size_t PlumbingGraph::valency(VertexId id) const { return neighbours(id).size(); }

const std::set<VertexId> &PlumbingGraph::neighbours(VertexId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end())
    throw ValidationError("unknown vertex " + std::to_string(id));
  return it->second;
}

std::vector<Vertex> PlumbingGraph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(framings_.size());
  for (const auto &[id, framing] : framings_)
    out.push_back({id, framing});
  return out;
}

std::vector<VertexId> PlumbingGraph::vertex_ids() const {
  std::vector<VertexId> out;
  out.reserve(framings_.size());
  for (const auto &entry : framings_)
    out.push_back(entry.first);
  return out;
}

std::size_t PlumbingGraph::index_of(VertexId id) const {
  auto it = framings_.find(id);
  if (it == framings_.end())
    throw ValidationError("unknown vertex " + std::to_string(id));
  return static_cast<std::size_t>(std::distance(framings_.begin(), it));
}

BigInt PlumbingGraph::excess(VertexId id) const {
  return -framing(id) - BigInt(valency(id));
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << "tree=" << (is_tree ? "yes" : "no")
      << " negative_definite=" << (negative_definite ? "yes" : "no")
      << " reduced_fundamental_cycle=" << (reduced_fundamental_cycle ? "yes" : "no");
  if (!offending_vertices.empty()) {
    out << " offending=[";
    for (std::size_t i = 0; i < offending_vertices.size(); ++i)
      out << (i ? "," : "") << offending_vertices[i];
    out << "]";
  }
  return out.str();
}

PlumbingGraph parse_plumbing(std::string_view text) {
  PlumbingGraph g;
  std::vector<std::pair<std::size_t, Edge>> pending_edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);

    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#')
      continue;
    if (tokens.front() == "v") {
      VertexId id;
      BigInt framing;
      if (tokens.size() != 3 || !parse_id(tokens[1], id) ||
          !parse_decimal(tokens[2], framing))
        throw ParseError(line_no, "expected 'v <id> <framing>'");
      if (g.has_vertex(id))
        throw ParseError(line_no, "duplicate vertex id " + std::to_string(id));
      g.add_vertex(id, std::move(framing));
    } else if (tokens.front() == "e") {
      VertexId u, v;
      if (tokens.size() != 3 || !parse_id(tokens[1], u) || !parse_id(tokens[2], v))
        throw ParseError(line_no, "expected 'e <id> <id>'");
      pending_edges.push_back({line_no, {u, v}});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tokens.front()) + "'");
    }
  }
  // Edges may precede the vertices they mention.
  for (const auto &[where, edge] : pending_edges) {
    try {
      g.add_edge(edge.first, edge.second);
    } catch (const ValidationError &e) {
      throw ParseError(where, e.what());
    }
  }
  if (g.vertex_count() == 0)
    throw ParseError(line_no, "no vertices declared");
  return g;
}

std::string serialize_plumbing(const PlumbingGraph &g) {
  std::ostringstream out;
  for (const auto &v : g.vertices())
    out << "v " << v.id << ' ' << v.framing << '\n';
  for (const auto &[u, v] : g.edges())
    out << "e " << u << ' ' << v << '\n';
  return out.str();
}

std::map<VertexId, std::size_t> distances_from(const PlumbingGraph &g,
                                               VertexId source) {
  std::map<VertexId, std::size_t> dist;
  if (!g.has_vertex(source))
    throw ValidationError("unknown vertex " + std::to_string(source));
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (auto w : g.neighbours(v))
      if (dist.emplace(w, dist[v] + 1).second)
        queue.push_back(w);
  }
  return dist;
}

bool is_tree(const PlumbingGraph &g) {
  if (g.vertex_count() == 0 || g.edge_count() + 1 != g.vertex_count())
    return false;
  return distances_from(g, g.vertex_ids().front()).size() == g.vertex_count();
}

GramMatrix gram_matrix(const PlumbingGraph &g) {
  const auto ids = g.vertex_ids();
  const std::size_t n = ids.size();
  std::vector<std::vector<BigInt>> entries(n, std::vector<BigInt>(n, 0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    entries[i][i] = g.framing(ids[i]);
    labels.push_back(std::to_string(ids[i]));
  }
  for (const auto &[u, v] : g.edges()) {
    const auto i = g.index_of(u), j = g.index_of(v);
    entries[i][j] = entries[j][i] = 1;
  }
  return GramMatrix(std::move(labels), std::move(entries));
}

ValidationReport validate(const PlumbingGraph &g) {
  ValidationReport report;
  if (g.vertex_count() == 0)
    return report;
  std::set<VertexId> offending;

  report.is_tree = is_tree(g);
  if (!report.is_tree) {
    const auto reach = distances_from(g, g.vertex_ids().front());
    for (auto id : g.vertex_ids())
      if (!reach.count(id))
        offending.insert(id);
    for (auto id : two_core(g))
      offending.insert(id);
  }

  const GramMatrix q = gram_matrix(g);
  report.negative_definite = is_negative_definite(q);
  if (!report.negative_definite) {
    // The first leading minor with the wrong sign names a vertex.
    const auto minors = leading_minors(q);
    std::size_t k = 0;
    for (; k < minors.size(); ++k) {
      const bool want_negative = (k % 2 == 0);
      if (want_negative ? minors[k] >= 0 : minors[k] <= 0)
        break;
    }
    offending.insert(g.vertex_ids()[std::min(k, q.rank() - 1)]);
  }

  report.reduced_fundamental_cycle = true;
  for (auto id : g.vertex_ids()) {
    if (g.excess(id) < 0) {
      report.reduced_fundamental_cycle = false;
      offending.insert(id);
    }
  }
  report.offending_vertices.assign(offending.begin(), offending.end());
  return report;
}

void require_valid(const PlumbingGraph &g) {
  const auto report = validate(g);
  if (!report.ok())
    throw ValidationError("invalid plumbing graph: " + report.summary());
}

PlumbingGraph generate_gamma_n(int n) {
  if (n < 2)
    throw ValidationError("the family is defined for n >= 2, got " + std::to_string(n));
  PlumbingGraph g;
  const BigInt framings[] = {-4, -2, -(BigInt(n) + 1), -3, -3, -3, -4};
  for (VertexId id = 0; id < 7; ++id)
    g.add_vertex(id, framings[id]);
  const VertexId chain_end = 7 + static_cast<VertexId>(n) - 2;
  for (VertexId id = 7; id <= chain_end; ++id)
    g.add_vertex(id, -2);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(3, 5);
  g.add_edge(2, 6);
  g.add_edge(6, 7);
  for (VertexId id = 7; id < chain_end; ++id)
    g.add_edge(id, id + 1);
  return g;
}

std::size_t vertex_distance(const PlumbingGraph &g, VertexId u, VertexId v) {
  if (!g.has_vertex(v))
    throw ValidationError("unknown vertex " + std::to_string(v));
  const auto dist = distances_from(g, u);
  auto it = dist.find(v);
  if (it == dist.end())
    throw ValidationError("vertices " + std::to_string(u) + " and " +
                          std::to_string(v) + " are not connected");
  return it->second;
}

} // namespace plumbcap
