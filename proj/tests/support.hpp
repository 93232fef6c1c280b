#pragma once

// Test-only helpers: independent reference computations and generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plumbcap/embedder.hpp"
#include "plumbcap/intlin.hpp"
#include "plumbcap/plumbing.hpp"

namespace plumbcap::testing {

inline GramMatrix make_gram(const std::vector<std::vector<std::int64_t>> &rows) {
  std::vector<std::string> labels;
  std::vector<std::vector<BigInt>> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    labels.push_back("x" + std::to_string(i));
    entries.emplace_back(rows[i].begin(), rows[i].end());
  }
  return GramMatrix(std::move(labels), std::move(entries));
}

// Brute-force definiteness probe: searches x in [-bound, bound]^n, x != 0, for
// x^T Q x >= 0. Returns true if none is found.
inline bool no_nonnegative_vector(const GramMatrix &q, int bound) {
  const std::size_t n = q.rank();
  std::vector<int> x(n, -bound);
  while (true) {
    bool zero = true;
    for (int v : x)
      zero = zero && v == 0;
    if (!zero) {
      BigInt value = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          value += q(i, j) * x[i] * x[j];
      if (value >= 0)
        return false;
    }
    std::size_t k = 0;
    while (k < n && x[k] == bound)
      x[k++] = -bound;
    if (k == n)
      return true;
    ++x[k];
  }
}

// Cofactor expansion determinant, for small matrices only.
inline BigInt cofactor_determinant(const std::vector<std::vector<BigInt>> &m) {
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return m[0][0];
  BigInt total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col)
          row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const BigInt term = m[0][col] * cofactor_determinant(minor);
    if (col % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// Embedding search that only exploits the freedom of columns nobody has used
// yet: every new row takes arbitrary values on used columns and a
// nonnegative non-increasing tail on fresh ones. Rows in input order.
class FreshOnlyOracle {
public:
  FreshOnlyOracle(const GramMatrix &q, std::size_t cols) : cols_(cols) {
    for (std::size_t i = 0; i < q.rank(); ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < q.rank(); ++j)
        row.push_back(-static_cast<std::int64_t>(q(i, j)));
      gram_.push_back(std::move(row));
    }
  }

  bool embeds() {
    rows_.clear();
    return place(0, 0);
  }
  const IntMatrix &rows() const { return rows_; }

private:
  bool place(std::size_t i, std::size_t used) {
    if (i == gram_.size())
      return true;
    std::vector<std::int64_t> v(cols_, 0);
    return used_part(i, used, 0, gram_[i][i], v);
  }

  bool used_part(std::size_t i, std::size_t used, std::size_t c, std::int64_t rem,
                 std::vector<std::int64_t> &v) {
    if (c == used) {
      for (std::size_t j = 0; j < i; ++j) {
        std::int64_t dot = 0;
        for (std::size_t k = 0; k < used; ++k)
          dot += v[k] * rows_[j][k];
        if (dot != gram_[i][j])
          return false;
      }
      return fresh_part(i, used, rem, rem, v);
    }
    std::int64_t b = 0;
    while ((b + 1) * (b + 1) <= rem)
      ++b;
    for (std::int64_t x = -b; x <= b; ++x) {
      v[c] = x;
      if (used_part(i, used, c + 1, rem - x * x, v))
        return true;
    }
    v[c] = 0;
    return false;
  }

  bool fresh_part(std::size_t i, std::size_t c, std::int64_t rem, std::int64_t cap,
                  std::vector<std::int64_t> &v) {
    if (rem == 0) {
      rows_.push_back(v);
      if (place(i + 1, c))
        return true;
      rows_.pop_back();
      return false;
    }
    if (c == cols_)
      return false;
    for (std::int64_t x = cap; x >= 1; --x) {
      if (x * x > rem)
        continue;
      v[c] = x;
      if (fresh_part(i, c + 1, rem - x * x, x, v))
        return true;
    }
    v[c] = 0;
    return false;
  }

  std::size_t cols_;
  IntMatrix gram_;
  IntMatrix rows_;
};

// Random tree with at most max_vertices vertices and framings in [-6, -1]
// satisfying -e_v >= d_v and negative definiteness (rejection sampling).
inline PlumbingGraph random_valid_tree(std::mt19937_64 &rng, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_vertices);
  std::uniform_int_distribution<int> framing_dist(-6, -1);
  while (true) {
    const std::size_t n = size_dist(rng);
    std::vector<std::size_t> parent(n, 0);
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t v = 1; v < n; ++v) {
      parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
      ++degree[v];
      ++degree[parent[v]];
    }
    PlumbingGraph g;
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const int framing = framing_dist(rng);
      if (-framing < static_cast<int>(degree[v]))
        ok = false;
      g.add_vertex(v, framing);
    }
    if (!ok)
      continue;
    for (std::size_t v = 1; v < n; ++v)
      g.add_edge(parent[v], v);
    if (validate(g).ok())
      return g;
  }
}

// Random symmetric negative definite matrix with entries in [lo, hi].
inline GramMatrix random_definite(std::mt19937_64 &rng, std::size_t rank, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  while (true) {
    std::vector<std::vector<std::int64_t>> rows(rank, std::vector<std::int64_t>(rank));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i; j < rank; ++j)
        rows[i][j] = rows[j][i] = dist(rng);
    auto q = make_gram(rows);
    if (is_negative_definite(q))
      return q;
  }
}

} // namespace plumbcap::testing
