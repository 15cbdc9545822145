#include "lcp/core.hpp"

#include <doctest.h>

#include <random>

using namespace lcp;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix random_matrix(std::mt19937_64& rng, int n, double range = 2.0) {
  std::uniform_real_distribution<double> unif(-range, range);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = unif(rng);
  return m;
}

Vector random_vector(std::mt19937_64& rng, int n, double range = 2.0) {
  std::uniform_real_distribution<double> unif(-range, range);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = unif(rng);
  return v;
}

}  // namespace

TEST_CASE("IndexSet mask encoding and display") {
  IndexSet a(0b101, 3);
  CHECK(a.contains(0));
  CHECK(!a.contains(1));
  CHECK(a.contains(2));
  CHECK(a.to_string() == "{1,3}");
  CHECK(IndexSet::empty_set(3).to_string() == "{}");
  CHECK(IndexSet::parse("{1,3}", 3) == a);
  CHECK(IndexSet::parse("{}", 3) == IndexSet::empty_set(3));
  CHECK(a.complement() == IndexSet(0b010, 3));
  CHECK(IndexSet::all_subsets(2).size() == 4);
  CHECK_THROWS_AS(IndexSet(0b1000, 3), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::parse("{4}", 3), std::invalid_argument);
}

TEST_CASE("complementary_matrix columns") {
  const Matrix m = mat2(1, 2, 2, 1);

  SUBCASE("empty index set leaves the identity") {
    CHECK(complementary_matrix(m, IndexSet::empty_set(2), +1) ==
          Matrix::Identity(2, 2));
  }
  SUBCASE("alpha = {1} negates column 1") {
    Matrix expected = mat2(-1, 0, -2, 1);
    CHECK(complementary_matrix(m, IndexSet(0b01, 2), +1) == expected);
  }
  SUBCASE("sign -1 on the full set reproduces M") {
    CHECK(complementary_matrix(m, IndexSet::full_set(2), -1) == m);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(complementary_matrix(m, IndexSet::empty_set(3), +1),
                    std::invalid_argument);
  }
}

TEST_CASE("C_M(alpha) = C_{-M}(alpha) * C_I(alpha)") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Matrix m = random_matrix(rng, n);
    for (const IndexSet& alpha : IndexSet::all_subsets(n)) {
      const Matrix lhs = complementary_matrix(m, alpha, +1);
      const Matrix rhs =
          complementary_matrix(m, alpha, -1) * orthant_matrix(alpha, n);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("pwl_apply known values") {
  const Matrix m = mat2(1, 2, 2, 1);
  CHECK((pwl_apply(m, vec2(-2, 2)) - vec2(-2, -2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pwl_apply(m, Vector::Zero(2)) == Vector::Zero(2));
  CHECK((pwl_apply(m, vec2(-2.0 / 3, -2.0 / 3)) - vec2(-2, -2))
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
}

TEST_CASE("pwl_apply is continuous across faces") {
  // Any alpha consistent with the zero coordinates gives the same value.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Matrix m = random_matrix(rng, n);
    Vector x = random_vector(rng, n);
    std::uint32_t zeros = 0;
    for (int i = 0; i < n; ++i)
      if (rng() % 2) {
        x[i] = 0.0;
        zeros |= 1u << i;
      }
    const std::uint32_t mandatory = orthant_of(x).bits() & ~zeros;
    Vector ref;
    bool first = true;
    for (const IndexSet& alpha : IndexSet::all_subsets(n)) {
      const bool consistent = (alpha.bits() & ~(mandatory | zeros)) == 0 &&
                              (mandatory & ~alpha.bits()) == 0;
      if (!consistent) continue;
      const Vector val = complementary_matrix(m, alpha, -1) * x;
      if (first) {
        ref = val;
        first = false;
      } else {
        CHECK(val == ref);  // exact: differing columns multiply exact zeros
      }
    }
  }
}

TEST_CASE("pwl image lies in the matching complementary cone") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);  // n in 2..4
    const Matrix m = random_matrix(rng, n);
    for (int k = 0; k < 100; ++k) {
      const Vector x = random_vector(rng, n);
      const Vector y = pwl_apply(m, x);
      const IndexSet alpha = orthant_of(x);
      const Matrix c = complementary_matrix(m, alpha, +1);
      const Eigen::FullPivLU<Matrix> lu(c);
      if (std::abs(lu.determinant()) < 1e-8) continue;
      const Vector p = lu.solve(y);
      const double tol = scaled_tol(m, y, 1e-9);
      CHECK(p.minCoeff() >= -tol);
    }
  }
}

TEST_CASE("x_to_zw and zw_to_x") {
  auto [z, w] = x_to_zw(vec2(-4, 8));
  CHECK(z == vec2(4, 0));
  CHECK(w == vec2(0, 8));
  // w = Mz + q for q on the first path of the worked example.
  const Matrix m = mat2(1, 2, 2, 1);
  CHECK(((m * z + vec2(-4, 0)) - w).cwiseAbs().maxCoeff() == 0.0);

  auto [z0, w0] = x_to_zw(Vector::Zero(2));
  CHECK(z0 == Vector::Zero(2));
  CHECK(w0 == Vector::Zero(2));

  auto [z2, w2] = x_to_zw(vec2(-2.0 / 3, -2.0 / 3));
  CHECK(z2 == vec2(2.0 / 3, 2.0 / 3));
  CHECK(w2 == Vector::Zero(2));
  CHECK(((m * z2 + vec2(-2, -2)) - w2).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK(zw_to_x(vec2(4, 0), vec2(0, 8)) == vec2(-4, 8));
  CHECK(zw_to_x(Vector::Zero(2), Vector::Zero(2)) == Vector::Zero(2));
  CHECK(zw_to_x(vec2(2.0 / 3, 2.0 / 3), Vector::Zero(2)) ==
        vec2(-2.0 / 3, -2.0 / 3));

  CHECK_THROWS_AS(zw_to_x(vec2(1, 0), vec2(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(zw_to_x(vec2(-1, 0), vec2(0, 0)), std::invalid_argument);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Vector x = random_vector(rng, n, 5.0);
    auto [z, w] = x_to_zw(x);
    CHECK(zw_to_x(z, w) == x);
    CHECK(z.minCoeff() >= 0.0);
    CHECK(w.minCoeff() >= 0.0);
    CHECK(z.dot(w) == 0.0);

    // Complementary pair -> x -> pair.
    Vector zc = Vector::Zero(n), wc = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(x[i]);
      if (rng() % 2) zc[i] = v;
      else wc[i] = v;
    }
    auto [zb, wb] = x_to_zw(zw_to_x(zc, wc));
    CHECK((zb - zc).cwiseAbs().maxCoeff() == 0.0);
    CHECK((wb - wc).cwiseAbs().maxCoeff() == 0.0);
  }
}
