#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbcap/bigint.hpp"

namespace plumbcap {

/// Labeled symmetric integer matrix. Used both for the plumbing form and
/// for the dual configuration form.
class GramMatrix {
public:
  /// Throws ValidationError unless the matrix is square and symmetric and the
  /// labels are unique and match the rank. Rank 0 is the empty lattice.
  GramMatrix(std::vector<std::string> labels,
             std::vector<std::vector<BigInt>> entries);

  std::size_t rank() const noexcept { return labels_.size(); }
  const std::vector<std::string> &labels() const noexcept { return labels_; }
  const std::vector<std::vector<BigInt>> &entries() const noexcept {
    return entries_;
  }
  const BigInt &operator()(std::size_t i, std::size_t j) const {
    return entries_[i][j];
  }

  /// {"rank": int, "labels": [string...], "gram": [[int...]...]}
  nlohmann::json to_json() const;
  static GramMatrix from_json(const nlohmann::json &doc);

  friend bool operator==(const GramMatrix &, const GramMatrix &) = default;

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<BigInt>> entries_;
};

/// Characteristic vector with 0/1 coefficients in the matrix basis.
struct WuClass {
  std::vector<std::uint8_t> coefficients;

  friend bool operator==(const WuClass &, const WuClass &) = default;
};

/// Leading principal minors det(Q[0..k, 0..k]) for k = 0..rank-1, exact.
/// Stops early (shorter result) after the first vanishing minor.
std::vector<BigInt> leading_minors(const GramMatrix &q);

bool is_negative_definite(const GramMatrix &q);

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
BigInt determinant(const GramMatrix &q);

/// Every w in {0,1}^rank with Q w = diag(Q) (mod 2). The system is always
/// solvable for symmetric Q, so the result is never empty. Throws Error if
/// the solution space has more than 2^24 elements.
std::vector<WuClass> wu_classes(const GramMatrix &q);

/// Rank of Q over GF(2).
std::size_t rank_mod2(const GramMatrix &q);

/// sigma(Q) - w^T Q w for the unique Wu class w of a negative definite Q.
/// Throws NotDefinite, or NonUniqueSpin when det(Q) is even.
BigInt mu_bar(const GramMatrix &q);

} // namespace plumbcap
