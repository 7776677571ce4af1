#include "doctest.h"

#include "kdescent/generator.hpp"
#include "kdescent/normal_form.hpp"

using namespace kdescent;

namespace {

MatrixXZ mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  MatrixXZ m = zeros(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long long v : row) m(i, j++) = Integer(v);
    ++i;
  }
  return m;
}

/* independent rank oracle: fraction-free row reduction over Q */
Index row_reduction_rank(MatrixXZ a) {
  Index rank = 0;
  Index rows = a.rows(), cols = a.cols();
  for (Index j = 0; j < cols && rank < rows; ++j) {
    Index piv = -1;
    for (Index i = rank; i < rows; ++i)
      if (!a(i, j).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(rank));
    for (Index i = rank + 1; i < rows; ++i) {
      if (a(i, j).is_zero()) continue;
      Integer p = a(rank, j), q = a(i, j);
      a.row(i) = (p * a.row(i) - q * a.row(rank)).eval();
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("smith normal form on pinned inputs") {
  {
    auto s = smith_normal_form<Integer>(mat({{2}}));
    CHECK(s.rank == 1);
    CHECK(s.D(0, 0) == Integer(2));
  }
  {
    auto s = smith_normal_form<Integer>(mat({{1, 1, -1}, {1, 1, -1}}));
    CHECK(s.rank == 1);
    CHECK(s.D(0, 0) == Integer(1));
    CHECK(s.D(1, 1) == Integer(0));
  }
  {
    auto s = smith_normal_form<Integer>(zeros(3, 2));
    CHECK(s.rank == 0);
    CHECK(is_zero(s.D));
  }
}

TEST_CASE("smith transforms are unimodular and invert exactly") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    Index r = 1 + rng.below(6), c = 1 + rng.below(6);
    MatrixXZ m = random_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form<Integer>(m);
    CHECK(equal(s.U * m * s.V, s.D));
    CHECK(equal(s.Uinv * s.D * s.Vinv, m));
    CHECK(equal(s.U * s.Uinv, identity(r)));
    CHECK(equal(s.V * s.Vinv, identity(c)));
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    for (Index i = 0; i + 1 < s.rank; ++i)
      CHECK(divides(s.D(i, i), s.D(i + 1, i + 1)));
    for (Index i = 0; i < s.rank; ++i) CHECK(s.D(i, i) > 0);
  }
}

TEST_CASE("smith is deterministic") {
  Rng rng(5);
  MatrixXZ m = random_matrix(rng, 5, 4, -9, 9);
  auto a = smith_normal_form<Integer>(m);
  auto b = smith_normal_form<Integer>(m);
  CHECK(equal(a.U, b.U));
  CHECK(equal(a.D, b.D));
  CHECK(equal(a.V, b.V));
}

TEST_CASE("rank plus kernel rank equals column count") {
  Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    Index r = 1 + rng.below(8), c = 1 + rng.below(8);
    MatrixXZ m = random_matrix(rng, r, c, -9, 9);
    MatrixXZ k = kernel_basis(m);
    CHECK(lattice_rank(m) + k.cols() == c);
    CHECK(lattice_rank(m) == row_reduction_rank(m));
    if (k.cols() > 0) CHECK(is_zero(MatrixXZ(m * k)));
  }
}

TEST_CASE("row hermite form is canonical") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    Index r = 1 + rng.below(6), c = 1 + rng.below(6);
    MatrixXZ m = random_matrix(rng, r, c, -9, 9);
    auto h = row_hermite(m);
    CHECK(equal(h.U * m, h.H));
    CHECK(equal(h.U * h.Uinv, identity(r)));
    for (Index k = 0; k < h.rank(); ++k) {
      Index j = h.pivot_cols[k];
      CHECK(h.H(k, j) > 0);
      for (Index i = 0; i < k; ++i) {
        CHECK(h.H(i, j) >= 0);
        CHECK(h.H(i, j) < h.H(k, j));
      }
      for (Index i = k + 1; i < r; ++i) CHECK(h.H(i, j).is_zero());
    }
    /* same lattice of rows */
    CHECK(lattice_equal(MatrixXZ(m.transpose()), MatrixXZ(h.H.transpose())));
  }
}

TEST_CASE("solve on pinned inputs") {
  {
    auto x = solve(mat({{2}}), mat({{4}}));
    REQUIRE(x.has_value());
    CHECK((*x)(0, 0) == Integer(2));
  }
  CHECK(!solve(mat({{2}}), mat({{3}})).has_value());
  {
    auto x = solve(mat({{1, 1}, {1, 1}}), mat({{1}, {1}}));
    REQUIRE(x.has_value());
    CHECK((*x)(0, 0) + (*x)(1, 0) == Integer(1));
  }
  CHECK(!solve(mat({{1, 1}, {1, 1}}), mat({{1}, {2}})).has_value());
}

TEST_CASE("solve agrees with a smith-based solvability oracle") {
  Rng rng(123);
  for (int t = 0; t < 60; ++t) {
    Index r = 1 + rng.below(5), c = 1 + rng.below(5);
    MatrixXZ m = random_matrix(rng, r, c, -4, 4);
    MatrixXZ b = random_matrix(rng, r, 1, -6, 6);

    auto s = smith_normal_form<Integer>(m);
    VectorXZ w = s.U * b;
    bool solvable = true;
    for (Index i = 0; i < r; ++i) {
      Integer d = i < std::min(r, c) ? s.D(i, i) : Integer(0);
      if (d.is_zero()) {
        if (!w(i).is_zero()) solvable = false;
      } else if (!divides(d, w(i))) {
        solvable = false;
      }
    }

    auto x = solve(m, b);
    CHECK(x.has_value() == solvable);
    if (x) CHECK(equal(MatrixXZ(m * *x), b));
  }
}

TEST_CASE("solutions of constructed systems are exact") {
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    Index r = 1 + rng.below(6), c = 1 + rng.below(6);
    MatrixXZ m = random_matrix(rng, r, c, -9, 9);
    MatrixXZ x0 = random_matrix(rng, c, 2, -5, 5);
    MatrixXZ b = m * x0;
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(equal(MatrixXZ(m * *x), b));
  }
}

TEST_CASE("lattice utilities") {
  MatrixXZ l = mat({{2, 0}, {0, 3}});
  CHECK(lattice_contains(l, mat({{4}, {3}})));
  CHECK(!lattice_contains(l, mat({{1}, {0}})));
  CHECK(lattice_equal(l, mat({{2, 2}, {3, 0}})));
  MatrixXZ p = mat({{2}});
  MatrixXZ pre = preimage_lattice(p, mat({{4}}));
  CHECK(lattice_equal(pre, mat({{2}})));
  CHECK(is_unimodular(mat({{2, 1}, {1, 1}})));
  CHECK(!is_unimodular(mat({{2, 0}, {0, 1}})));
  auto inv = integer_inverse(mat({{2, 1}, {1, 1}}));
  REQUIRE(inv.has_value());
  CHECK(equal(MatrixXZ(*inv * mat({{2, 1}, {1, 1}})), identity(2)));
}

TEST_CASE("solve rejects dimension mismatches") {
  CHECK_THROWS_AS(solve(mat({{1, 2}}), mat({{1}, {2}})), std::invalid_argument);
}
