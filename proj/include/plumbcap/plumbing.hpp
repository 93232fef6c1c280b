#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumbcap/bigint.hpp"
#include "plumbcap/intlin.hpp"

namespace plumbcap {

using VertexId = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>; // stored with first < second

struct Vertex {
  VertexId id;
  BigInt framing;
};

/// Framed graph of spheres. Ids are unique, edges join distinct existing
/// vertices and are never repeated. Tree-ness is checked by validate().
class PlumbingGraph {
public:
  /// Throws ValidationError on a duplicate id.
  void add_vertex(VertexId id, BigInt framing);
  /// Throws ValidationError on unknown ids, self-loops and repeated edges.
  void add_edge(VertexId u, VertexId v);

  bool has_vertex(VertexId id) const { return framings_.count(id) != 0; }
  const BigInt &framing(VertexId id) const;
  std::size_t valency(VertexId id) const;
  const std::set<VertexId> &neighbours(VertexId id) const;

  std::size_t vertex_count() const noexcept { return framings_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Vertices in ascending id order.
  std::vector<Vertex> vertices() const;
  std::vector<VertexId> vertex_ids() const;
  /// Edges sorted lexicographically, each as (smaller id, larger id).
  std::vector<Edge> edges() const { return {edges_.begin(), edges_.end()}; }

  /// Position of `id` in ascending id order; this is its Gram matrix index.
  std::size_t index_of(VertexId id) const;

  /// -e_v - d_v, the number of binding components drilled near v.
  BigInt excess(VertexId id) const;

  friend bool operator==(const PlumbingGraph &, const PlumbingGraph &) = default;

private:
  std::map<VertexId, BigInt> framings_;
  std::map<VertexId, std::set<VertexId>> adjacency_;
  std::set<Edge> edges_;
};

struct ValidationReport {
  bool is_tree = false;
  bool negative_definite = false;
  bool reduced_fundamental_cycle = false;
  std::vector<VertexId> offending_vertices;

  bool ok() const noexcept {
    return is_tree && negative_definite && reduced_fundamental_cycle;
  }
  std::string summary() const;
};

/// Line-oriented text format:
///   # comment
///   v <id> <framing>
///   e <id> <id>
PlumbingGraph parse_plumbing(std::string_view text);
std::string serialize_plumbing(const PlumbingGraph &g);

ValidationReport validate(const PlumbingGraph &g);
/// Throws ValidationError carrying the report summary unless every flag holds.
void require_valid(const PlumbingGraph &g);

bool is_tree(const PlumbingGraph &g);

/// Diagonal e_v, 1 for each edge, rows in ascending id order. Labels are the
/// decimal vertex ids.
GramMatrix gram_matrix(const PlumbingGraph &g);

/// The family of trees
///   a(-4) - b(-2) - c(-(n+1)) - s(-3) - {(-3), (-3)},  c - t(-4) - (n-1) x (-2)
/// with ids 0=a, 1=b, 2=c, 3=s, 4,5 the (-3) leaves, 6=t, 7.. the chain.
PlumbingGraph generate_gamma_n(int n);

/// Number of edges on the path from u to v. Throws ValidationError if either
/// id is unknown or no path exists.
std::size_t vertex_distance(const PlumbingGraph &g, VertexId u, VertexId v);

/// Breadth-first distances from `source`; unreachable vertices are absent.
std::map<VertexId, std::size_t> distances_from(const PlumbingGraph &g,
                                               VertexId source);

} // namespace plumbcap
