#include "doctest.h"

#include <random>

#include "plumbcap/errors.hpp"
#include "plumbcap/intlin.hpp"
#include "plumbcap/plumbing.hpp"
#include "support.hpp"

using namespace plumbcap;
using testing::make_gram;

namespace {

std::vector<std::size_t> support_of(const WuClass &w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.coefficients.size(); ++i)
    if (w.coefficients[i])
      out.push_back(i);
  return out;
}

bool is_characteristic(const GramMatrix &q, const WuClass &w) {
  for (std::size_t i = 0; i < q.rank(); ++i) {
    BigInt sum = 0;
    for (std::size_t j = 0; j < q.rank(); ++j)
      if (w.coefficients[j])
        sum += q(i, j);
    if (((sum - q(i, i)) % 2) != 0)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("gram matrix construction checks its invariants") {
  CHECK_THROWS_AS(make_gram({{-2, 1}, {0, -2}}), ValidationError);
  CHECK_THROWS_AS(GramMatrix({"a", "a"}, {{-2, 0}, {0, -2}}), ValidationError);
  CHECK_THROWS_AS(GramMatrix({"a"}, {{-2, 0}, {0, -2}}), ValidationError);
  CHECK_NOTHROW(GramMatrix({}, {}));
}

TEST_CASE("gram JSON") {
  const auto q = GramMatrix({"p", "q"}, {{-2, 1}, {1, -2}});
  const auto doc = q.to_json();
  CHECK(doc.dump() == R"({"gram":[[-2,1],[1,-2]],"labels":["p","q"],"rank":2})");
  CHECK(GramMatrix::from_json(doc) == q);
  CHECK_THROWS_AS(GramMatrix::from_json(nlohmann::json::parse(R"({"rank":2,"labels":["a","b"],"gram":[[-2,1],[0,-2]]})")),
                  ValidationError);
  CHECK_THROWS_AS(GramMatrix::from_json(nlohmann::json::parse(R"({"rank":3,"labels":["a","b"],"gram":[[-2,1],[1,-2]]})")),
                  ValidationError);
}

TEST_CASE("negative definiteness examples") {
  CHECK(is_negative_definite(make_gram({{-1}})));
  CHECK(is_negative_definite(make_gram({{-2, 1}, {1, -2}})));
  CHECK_FALSE(is_negative_definite(make_gram({{1}})));
  CHECK_FALSE(is_negative_definite(make_gram({{0}})));
  CHECK_FALSE(is_negative_definite(make_gram({{-1, 1}, {1, -1}})));
  CHECK_FALSE(is_negative_definite(make_gram({{-1, 2}, {2, -1}})));
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(is_negative_definite(gram_matrix(generate_gamma_n(n))));
  }
  CHECK(leading_minors(make_gram({{-2, 1}, {1, -2}})) == std::vector<BigInt>{-2, 3});
}

TEST_CASE("determinant examples") {
  CHECK(determinant(make_gram({{-2, 1}, {1, -2}})) == 3);
  for (std::size_t r = 1; r <= 9; ++r) {
    std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      rows[i][i] = -1;
    CHECK(determinant(make_gram(rows)) == (r % 2 ? -1 : 1));
  }
  // Zero leading entry forces a row swap.
  CHECK(determinant(make_gram({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(make_gram({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("gamma_n determinant parity follows n") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const BigInt det = determinant(gram_matrix(generate_gamma_n(n)));
    CHECK(abs(det % 2) == n % 2);
  }
  // Frozen from an independent exact rational computation.
  CHECK(determinant(gram_matrix(generate_gamma_n(2))) == 1764);
  CHECK(determinant(gram_matrix(generate_gamma_n(3))) == -3969);
}

TEST_CASE("determinant agrees with cofactor expansion and multiplies over blocks") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t a = 1 + trial % 4, b = 1 + (trial / 4) % 3;
    std::vector<std::vector<std::int64_t>> left(a, std::vector<std::int64_t>(a));
    std::vector<std::vector<std::int64_t>> right(b, std::vector<std::int64_t>(b));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = i; j < a; ++j)
        left[i][j] = left[j][i] = dist(rng);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = i; j < b; ++j)
        right[i][j] = right[j][i] = dist(rng);
    std::vector<std::vector<std::int64_t>> block(a + b, std::vector<std::int64_t>(a + b, 0));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j)
        block[i][j] = left[i][j];
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j)
        block[a + i][a + j] = right[i][j];

    const auto qb = make_gram(block);
    CHECK(determinant(qb) == determinant(make_gram(left)) * determinant(make_gram(right)));
    CHECK(determinant(qb) == testing::cofactor_determinant(qb.entries()));
  }
}

TEST_CASE("definiteness agrees with a brute-force probe on small matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> diag(-4, 0), off(-2, 2);
  int definite = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      rows[i][i] = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j)
        rows[i][j] = rows[j][i] = off(rng);
    }
    const auto q = make_gram(rows);
    CAPTURE(q.to_json().dump());
    const bool exact = is_negative_definite(q);
    definite += exact;
    CHECK(exact == testing::no_nonnegative_vector(q, 3));
  }
  CHECK(definite > 20);
}

TEST_CASE("wu class examples") {
  const auto two = wu_classes(make_gram({{-2}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].coefficients == std::vector<std::uint8_t>{0});
  CHECK(two[1].coefficients == std::vector<std::uint8_t>{1});

  const auto three = wu_classes(make_gram({{-3}}));
  REQUIRE(three.size() == 1);
  CHECK(three[0].coefficients == std::vector<std::uint8_t>{1});
}

TEST_CASE("gamma_n wu class for odd n") {
  for (int n : {3, 5, 7, 9, 11}) {
    CAPTURE(n);
    const auto q = gram_matrix(generate_gamma_n(n));
    const auto classes = wu_classes(q);
    REQUIRE(classes.size() == 1);
    // s (id 3), t (id 6), then the chain vertices 8, 10, ..., n + 5.
    std::vector<std::size_t> expected{3, 6};
    for (std::size_t id = 8; id <= static_cast<std::size_t>(n + 5); id += 2)
      expected.push_back(id);
    CHECK(support_of(classes[0]) == expected);
  }
}

TEST_CASE("wu class count is 2^(nullity mod 2)") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        rows[i][j] = rows[j][i] = dist(rng);
    const auto q = make_gram(rows);
    const auto classes = wu_classes(q);
    CHECK(classes.size() == (std::size_t{1} << (n - rank_mod2(q))));
    for (const auto &w : classes)
      CHECK(is_characteristic(q, w));
    if (determinant(q) % 2 != 0)
      CHECK(classes.size() == 1);
  }
  for (int n = 2; n <= 12; ++n)
    for (const auto &w : wu_classes(gram_matrix(generate_gamma_n(n))))
      CHECK(is_characteristic(gram_matrix(generate_gamma_n(n)), w));
}

TEST_CASE("mu_bar") {
  CHECK(mu_bar(make_gram({{-3}})) == 2);
  CHECK_THROWS_AS(mu_bar(make_gram({{-2}})), NonUniqueSpin);
  CHECK_THROWS_AS(mu_bar(make_gram({{1}})), NotDefinite);
  for (int n : {7, 9, 11}) {
    CAPTURE(n);
    CHECK(mu_bar(gram_matrix(generate_gamma_n(n))) == 0);
  }
  CHECK_THROWS_AS(mu_bar(gram_matrix(generate_gamma_n(8))), NonUniqueSpin);
}
