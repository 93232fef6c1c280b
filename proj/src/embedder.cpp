#include "plumbcap/embedder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "plumbcap/errors.hpp"

namespace plumbcap {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t isqrt(std::int64_t value) {
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(value)));
  while (root * root > value)
    --root;
  while ((root + 1) * (root + 1) <= value)
    ++root;
  return root;
}

// State shared by all workers of one embed_diagonal call.
class SharedControl {
public:
  explicit SharedControl(const SearchBudget &budget)
      : budget_(budget), start_(Clock::now()) {}

  bool should_stop() const { return halted_.load(std::memory_order_relaxed); }
  void halt() { halted_.store(true, std::memory_order_relaxed); }

  // Returns false once the budget is spent or a stop was requested.
  bool charge(std::uint64_t local_nodes, bool check_clock) {
    if (budget_.max_nodes && flushed_.load(std::memory_order_relaxed) + local_nodes >
                                 *budget_.max_nodes)
      return exhaust();
    if (check_clock) {
      if (budget_.stop.stop_requested())
        return exhaust();
      if (budget_.max_time && Clock::now() - start_ > *budget_.max_time)
        return exhaust();
    }
    return !should_stop();
  }

  void flush(std::uint64_t nodes) { flushed_.fetch_add(nodes, std::memory_order_relaxed); }
  std::uint64_t total_nodes() const { return flushed_.load(); }
  bool exhausted() const { return exhausted_.load(); }
  Clock::time_point start() const { return start_; }

private:
  bool exhaust() {
    exhausted_.store(true);
    halt();
    return false;
  }

  const SearchBudget &budget_;
  Clock::time_point start_;
  std::atomic<std::uint64_t> flushed_{0};
  std::atomic<bool> halted_{false};
  std::atomic<bool> exhausted_{false};
};

// Depth-first search for an integer matrix X with X X^T == gram, one row at a
// time, one column at a time.
class LatticeSearch {
public:
  enum class Mode { Solve, Collect };

  LatticeSearch(const IntMatrix &gram, std::size_t cols, SharedControl &control)
      : gram_(gram), rows_(gram.size()), cols_(cols), control_(control),
        x_(rows_, std::vector<std::int64_t>(cols_, 0)),
        suffix_(rows_, std::vector<std::int64_t>(cols_ + 1, 0)),
        block_start_(rows_ + 1, std::vector<std::uint8_t>(cols_, 0)),
        fresh_(rows_ + 1, 0), deficit_(rows_, std::vector<std::int64_t>(rows_, 0)) {
    if (cols_ > 0)
      block_start_[0][0] = 1;
  }

  // Solve: true iff a full solution was found (see solution()).
  // Collect: records every placement of rows [prefix.size(), stop_row) that
  // extends `prefix`; returns false.
  bool run(const IntMatrix &prefix, Mode mode, std::size_t stop_row) {
    mode_ = mode;
    stop_row_ = stop_row;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      x_[k] = prefix[k];
      seal_row(k);
    }
    const bool found = start_row(prefix.size());
    control_.flush(nodes_ - flushed_);
    flushed_ = nodes_;
    return found;
  }

  IntMatrix solution() const { return x_; }
  std::vector<IntMatrix> &collected() { return collected_; }
  bool aborted() const { return aborted_; }

private:
  // Record suffix sums and refine the column classes after row k is final.
  void seal_row(std::size_t k) {
    const auto &row = x_[k];
    for (std::size_t c = cols_; c-- > 0;)
      suffix_[k][c] = suffix_[k][c + 1] + row[c] * row[c];
    for (std::size_t c = 0; c < cols_; ++c)
      block_start_[k + 1][c] =
          block_start_[k][c] || (c > 0 && row[c] != row[c - 1]) ? 1 : 0;
    std::size_t fresh = fresh_[k];
    while (fresh < cols_ && row[fresh] != 0)
      ++fresh;
    fresh_[k + 1] = fresh;
    if (fresh < cols_)
      block_start_[k + 1][fresh] = 1;
  }

  bool start_row(std::size_t k) {
    if (k == stop_row_ || k == rows_) {
      if (mode_ == Mode::Collect) {
        collected_.emplace_back(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(k));
        return false;
      }
      return true;
    }
    for (std::size_t j = 0; j < k; ++j)
      deficit_[k][j] = gram_[k][j];
    return assign(k, 0, gram_[k][k]);
  }

  bool tick() {
    ++nodes_;
    const bool clock = (nodes_ & 0xFFF) == 0;
    if (clock) {
      control_.flush(nodes_ - flushed_);
      flushed_ = nodes_;
    }
    if (!control_.charge(nodes_ - flushed_, clock)) {
      aborted_ = true;
      return false;
    }
    return true;
  }

  bool assign(std::size_t k, std::size_t c, std::int64_t remaining) {
    if (c == cols_ || (remaining == 0 && c >= fresh_[k])) {
      if (remaining != 0)
        return false;
      for (std::size_t j = 0; j < k; ++j)
        if (deficit_[k][j] != 0)
          return false;
      for (std::size_t rest = c; rest < cols_; ++rest)
        x_[k][rest] = 0;
      seal_row(k);
      return start_row(k + 1);
    }

    auto &row = x_[k];
    auto &deficit = deficit_[k];
    const bool fresh = c >= fresh_[k];
    const bool starts_block = block_start_[k][c] != 0;
    const std::int64_t bound = isqrt(remaining);
    std::int64_t hi = bound;
    if (!starts_block)
      hi = std::min(hi, row[c - 1]);
    const std::int64_t lo = fresh ? 0 : -bound;
    const std::int64_t columns_left = static_cast<std::int64_t>(cols_ - c - 1);

    for (std::int64_t v = hi; v >= lo; --v) {
      if (!tick())
        return false;
      const std::int64_t next = remaining - v * v;
      if (fresh) {
        // Later fresh entries are at most v.
        if (next > v * v * columns_left)
          break;
        row[c] = v;
        if (assign(k, c + 1, next))
          return true;
        if (aborted_)
          return false;
        continue;
      }

      bool feasible = true;
      for (std::size_t j = 0; j < k; ++j) {
        deficit[j] -= v * x_[j][c];
        const std::int64_t d = deficit[j];
        if (d * d > next * suffix_[j][c + 1])
          feasible = false;
      }
      if (feasible) {
        row[c] = v;
        if (assign(k, c + 1, next))
          return true;
      }
      for (std::size_t j = 0; j < k; ++j)
        deficit[j] += v * x_[j][c];
      if (aborted_)
        return false;
    }
    return false;
  }

  const IntMatrix &gram_;
  const std::size_t rows_;
  const std::size_t cols_;
  SharedControl &control_;

  IntMatrix x_;
  IntMatrix suffix_;                              // suffix_[j][c]: sum of squares of row j from c
  std::vector<std::vector<std::uint8_t>> block_start_; // per level, column class boundaries
  std::vector<std::size_t> fresh_;                 // per level, first never-used column
  IntMatrix deficit_;                             // deficit_[k][j]: inner product still owed

  Mode mode_ = Mode::Solve;
  std::size_t stop_row_ = 0;
  std::vector<IntMatrix> collected_;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  bool aborted_ = false;
};

// Positive definite integer Gram matrix -Q, reordered for placement.
struct Prepared {
  IntMatrix gram;
  std::vector<std::size_t> order; // order[k]: original index of placed row k
};

Prepared prepare(const GramMatrix &q) {
  const std::size_t n = q.rank();
  Prepared p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  std::vector<std::int64_t> norm(n);
  for (std::size_t i = 0; i < n; ++i)
    norm[i] = -to_int64(q(i, i));
  std::stable_sort(p.order.begin(), p.order.end(),
                   [&](std::size_t a, std::size_t b) { return norm[a] > norm[b]; });
  p.gram.assign(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      p.gram[a][b] = -to_int64(q(p.order[a], p.order[b]));
  return p;
}

IntMatrix restore_order(const IntMatrix &placed, const std::vector<std::size_t> &order) {
  IntMatrix out(placed.size());
  for (std::size_t k = 0; k < placed.size(); ++k)
    out[order[k]] = placed[k];
  return out;
}

std::chrono::milliseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

} // namespace

nlohmann::json EmbeddingOutcome::to_json(bool include_timing) const {
  nlohmann::json out;
  out["embeddable"] = embeddable;
  if (witness)
    out["witness"] = *witness;
  out["nodes"] = stats.nodes;
  out["millis"] = include_timing ? stats.elapsed.count() : 0;
  out["completed"] = stats.completed;
  return out;
}

EmbeddingOutcome embed_diagonal(const GramMatrix &q, std::size_t target_rank,
                                const SearchBudget &budget, unsigned threads) {
  if (target_rank == 0)
    throw Error("target rank must be positive");
  if (!is_negative_definite(q))
    throw NotDefinite("embed_diagonal requires a negative definite form");

  EmbeddingOutcome outcome;
  SharedControl control(budget);
  const std::size_t n = q.rank();
  if (n == 0) {
    outcome.embeddable = true;
    outcome.witness = IntMatrix{};
    outcome.stats.completed = true;
    return outcome;
  }
  if (n > target_rank) {
    // Images of a definite basis are linearly independent.
    outcome.stats.completed = true;
    outcome.stats.elapsed = since(control.start());
    return outcome;
  }

  const Prepared prepared = prepare(q);
  std::optional<IntMatrix> found;

  if (threads <= 1) {
    LatticeSearch search(prepared.gram, target_rank, control);
    if (search.run({}, LatticeSearch::Mode::Solve, n))
      found = search.solution();
  } else {
    // Split after enough rows to hand every worker several subtrees.
    std::vector<IntMatrix> frontier{IntMatrix{}};
    std::size_t depth = 0;
    while (depth < n && frontier.size() < 8 * static_cast<std::size_t>(threads) &&
           !control.should_stop()) {
      std::vector<IntMatrix> next;
      for (const auto &prefix : frontier) {
        LatticeSearch expand(prepared.gram, target_rank, control);
        expand.run(prefix, LatticeSearch::Mode::Collect, depth + 1);
        for (auto &p : expand.collected())
          next.push_back(std::move(p));
      }
      frontier = std::move(next);
      ++depth;
    }
    if (!control.should_stop() && depth == n && !frontier.empty()) {
      found = frontier.front();
    } else if (!control.should_stop()) {
      std::atomic<std::size_t> cursor{0};
      std::mutex result_mutex;
      auto worker = [&] {
        while (!control.should_stop()) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= frontier.size())
            return;
          LatticeSearch search(prepared.gram, target_rank, control);
          if (search.run(frontier[i], LatticeSearch::Mode::Solve, n)) {
            std::lock_guard lock(result_mutex);
            if (!found)
              found = search.solution();
            control.halt();
          }
        }
      };
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    }
  }

  outcome.stats.nodes = control.total_nodes();
  outcome.stats.elapsed = since(control.start());
  if (found) {
    outcome.embeddable = true;
    outcome.witness = restore_order(*found, prepared.order);
    outcome.stats.completed = true;
  } else {
    outcome.stats.completed = !control.exhausted();
  }
  return outcome;
}

bool verify_witness(const GramMatrix &q, const IntMatrix &m) {
  const std::size_t n = q.rank();
  if (m.size() != n)
    throw Error("witness has " + std::to_string(m.size()) + " rows, expected " +
                std::to_string(n));
  for (const auto &row : m)
    if (row.size() != m.front().size())
      return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt product = 0;
      for (std::size_t k = 0; k < m[i].size(); ++k)
        product += BigInt(m[i][k]) * m[j][k];
      if (product != -q(i, j))
        return false;
    }
  }
  return true;
}

namespace {

struct NaiveSearch {
  const GramMatrix &q;
  std::size_t cols;
  IntMatrix rows;
  std::uint64_t nodes = 0;

  bool place(std::size_t i) {
    if (i == q.rank())
      return true;
    const std::int64_t norm = -to_int64(q(i, i));
    const std::int64_t bound = isqrt(norm);
    std::vector<std::int64_t> candidate(cols, -bound);
    // Odometer over [-bound, bound]^cols.
    while (true) {
      ++nodes;
      std::int64_t square = 0;
      for (auto x : candidate)
        square += x * x;
      bool ok = square == norm;
      for (std::size_t j = 0; ok && j < i; ++j) {
        std::int64_t dot = 0;
        for (std::size_t k = 0; k < cols; ++k)
          dot += candidate[k] * rows[j][k];
        ok = dot == -to_int64(q(i, j));
      }
      if (ok) {
        rows.push_back(candidate);
        if (place(i + 1))
          return true;
        rows.pop_back();
      }
      std::size_t k = 0;
      while (k < cols && candidate[k] == bound)
        candidate[k++] = -bound;
      if (k == cols)
        return false;
      ++candidate[k];
    }
  }
};

} // namespace

EmbeddingOutcome naive_embed_oracle(const GramMatrix &q, std::size_t target_rank) {
  if (q.rank() > 4 || target_rank > 4 || target_rank == 0)
    throw Error("naive oracle is limited to rank <= 4 and 1 <= target rank <= 4");
  for (std::size_t i = 0; i < q.rank(); ++i)
    if (q(i, i) < -6 || q(i, i) > 6)
      throw Error("naive oracle is limited to |Q(i,i)| <= 6");
  if (!is_negative_definite(q))
    throw NotDefinite("naive oracle requires a negative definite form");

  const auto start = Clock::now();
  NaiveSearch search{q, target_rank, {}, 0};
  EmbeddingOutcome outcome;
  outcome.embeddable = search.place(0);
  if (outcome.embeddable)
    outcome.witness = search.rows;
  outcome.stats = {search.nodes, since(start), true};
  return outcome;
}

} // namespace plumbcap
