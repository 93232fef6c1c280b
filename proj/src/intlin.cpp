#include "plumbcap/intlin.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "plumbcap/errors.hpp"

namespace plumbcap {

namespace {

using Rows = std::vector<std::vector<BigInt>>;

bool is_odd(const BigInt &value) { return bit_test(value, 0); }

// GF(2) row with one bit per column plus the augmented column at index `cols`.
using BitRow = std::vector<std::uint64_t>;

bool get_bit(const BitRow &row, std::size_t i) {
  return (row[i / 64] >> (i % 64)) & 1U;
}

void set_bit(BitRow &row, std::size_t i) { row[i / 64] |= std::uint64_t{1} << (i % 64); }

void xor_into(BitRow &dst, const BitRow &src) {
  for (std::size_t w = 0; w < dst.size(); ++w)
    dst[w] ^= src[w];
}

struct EchelonForm {
  std::vector<BitRow> rows;          // reduced rows, one per pivot
  std::vector<std::size_t> pivots;   // pivot column of each row
  bool consistent = true;
};

// Reduced row echelon form of [Q mod 2 | diag(Q) mod 2].
EchelonForm reduce_mod2(const GramMatrix &q) {
  const std::size_t n = q.rank();
  const std::size_t words = (n + 1 + 63) / 64;
  std::vector<BitRow> rows(n, BitRow(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (is_odd(q(i, j)))
        set_bit(rows[i], j);
    if (is_odd(q(i, i)))
      set_bit(rows[i], n);
  }

  EchelonForm form;
  std::size_t next = 0;
  for (std::size_t col = 0; col < n && next < n; ++col) {
    std::size_t pivot = next;
    while (pivot < n && !get_bit(rows[pivot], col))
      ++pivot;
    if (pivot == n)
      continue;
    std::swap(rows[pivot], rows[next]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != next && get_bit(rows[r], col))
        xor_into(rows[r], rows[next]);
    form.pivots.push_back(col);
    ++next;
  }
  for (std::size_t r = next; r < n; ++r)
    if (get_bit(rows[r], n))
      form.consistent = false;
  rows.resize(next);
  form.rows = std::move(rows);
  return form;
}

} // namespace

GramMatrix::GramMatrix(std::vector<std::string> labels, Rows entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  const std::size_t n = labels_.size();
  if (entries_.size() != n)
    throw ValidationError("gram matrix has " + std::to_string(entries_.size()) +
                          " rows but " + std::to_string(n) + " labels");
  for (const auto &row : entries_)
    if (row.size() != n)
      throw ValidationError("gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (entries_[i][j] != entries_[j][i])
        throw ValidationError("gram matrix is not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
  std::set<std::string> seen;
  for (const auto &label : labels_)
    if (!seen.insert(label).second)
      throw ValidationError("duplicate gram label '" + label + "'");
}

nlohmann::json GramMatrix::to_json() const {
  nlohmann::json gram = nlohmann::json::array();
  for (const auto &row : entries_) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &value : row)
      out.push_back(to_int64(value));
    gram.push_back(std::move(out));
  }
  return {{"rank", rank()}, {"labels", labels_}, {"gram", std::move(gram)}};
}

GramMatrix GramMatrix::from_json(const nlohmann::json &doc) {
  if (!doc.is_object() || !doc.contains("gram"))
    throw ValidationError("gram JSON must be an object with a \"gram\" key");
  const auto &gram = doc.at("gram");
  if (!gram.is_array())
    throw ValidationError("\"gram\" must be an array of rows");
  Rows entries;
  for (const auto &row : gram) {
    if (!row.is_array())
      throw ValidationError("\"gram\" rows must be arrays");
    std::vector<BigInt> out;
    for (const auto &value : row) {
      if (!value.is_number_integer())
        throw ValidationError("gram entries must be integers");
      out.emplace_back(value.get<std::int64_t>());
    }
    entries.push_back(std::move(out));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    labels = doc.at("labels").get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i)
      labels.push_back("x" + std::to_string(i));
  }
  if (doc.contains("rank") && doc.at("rank").get<std::size_t>() != entries.size())
    throw ValidationError("\"rank\" does not match the number of rows");
  return GramMatrix(std::move(labels), std::move(entries));
}

std::vector<BigInt> leading_minors(const GramMatrix &q) {
  // Without pivoting, the k-th Bareiss pivot is the k-th leading minor.
  const std::size_t n = q.rank();
  Rows m = q.entries();
  std::vector<BigInt> minors;
  BigInt previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(m[k][k]);
    if (m[k][k] == 0)
      break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
    }
    previous = m[k][k];
  }
  return minors;
}

bool is_negative_definite(const GramMatrix &q) {
  const auto minors = leading_minors(q);
  if (minors.size() != q.rank())
    return false;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    // size k+1 minor must have sign (-1)^(k+1)
    const bool want_negative = (k % 2 == 0);
    if (want_negative ? minors[k] >= 0 : minors[k] <= 0)
      return false;
  }
  return true;
}

BigInt determinant(const GramMatrix &q) {
  const std::size_t n = q.rank();
  Rows m = q.entries();
  if (n == 0)
    return 1;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0)
      ++pivot;
    if (pivot == n)
      return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
      m[i][k] = 0;
    }
    previous = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t rank_mod2(const GramMatrix &q) { return reduce_mod2(q).pivots.size(); }

std::vector<WuClass> wu_classes(const GramMatrix &q) {
  const std::size_t n = q.rank();
  const EchelonForm form = reduce_mod2(q);
  if (!form.consistent)
    throw Error("characteristic equation has no solution mod 2");

  std::vector<bool> is_pivot(n, false);
  for (auto col : form.pivots)
    is_pivot[col] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < n; ++col)
    if (!is_pivot[col])
      free_cols.push_back(col);
  if (free_cols.size() > 24)
    throw Error("too many characteristic vectors to enumerate (nullity " +
                std::to_string(free_cols.size()) + ")");

  std::vector<WuClass> result;
  const std::uint64_t count = std::uint64_t{1} << free_cols.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    WuClass w{std::vector<std::uint8_t>(n, 0)};
    for (std::size_t f = 0; f < free_cols.size(); ++f)
      w.coefficients[free_cols[f]] = (mask >> f) & 1U;
    for (std::size_t r = 0; r < form.rows.size(); ++r) {
      bool bit = get_bit(form.rows[r], n);
      for (auto col : free_cols)
        if (w.coefficients[col] && get_bit(form.rows[r], col))
          bit = !bit;
      w.coefficients[form.pivots[r]] = bit ? 1 : 0;
    }
    result.push_back(std::move(w));
  }
  std::sort(result.begin(), result.end(), [](const WuClass &a, const WuClass &b) {
    return a.coefficients < b.coefficients;
  });
  return result;
}

BigInt mu_bar(const GramMatrix &q) {
  if (!is_negative_definite(q))
    throw NotDefinite("mu_bar requires a negative definite form");
  if (!is_odd(determinant(q)))
    throw NonUniqueSpin("determinant is even; the Wu class is not unique");
  const auto classes = wu_classes(q);
  const auto &w = classes.front().coefficients;
  BigInt square = 0;
  for (std::size_t i = 0; i < q.rank(); ++i)
    for (std::size_t j = 0; j < q.rank(); ++j)
      if (w[i] && w[j])
        square += q(i, j);
  const BigInt signature = -BigInt(q.rank());
  return signature - square;
}

} // namespace plumbcap
