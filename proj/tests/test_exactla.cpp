#include <random>

#include "doctest.h"
#include "hhlab/exactla.hpp"

using namespace hhlab;

namespace {

Mat dense(const Field& f, std::vector<std::vector<int>> rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::vector<Vec> v;
  for (auto& r : rows) {
    Vec x;
    for (int c : r) x.push_back(c);
    v.push_back(x);
  }
  return Mat::from_dense(f, v, cols);
}

Mat random_sparse(const Field& f, std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> val(-3, 3);
  MatBuilder b(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng) < density) b.add(r, c, val(rng));
  return std::move(b).build(f);
}

}  // namespace

TEST_CASE("field parsing and reduction") {
  CHECK(Field::parse("Q") == Field::rationals());
  CHECK(Field::parse("Fp:7").characteristic() == 7);
  CHECK_THROWS_AS(Field::parse("Fp:8"), Error);
  CHECK_THROWS_AS(Field::parse("R"), ParseError);
  Field f7 = Field::prime(7);
  CHECK(f7.reduce(Scalar(-1)) == 6);
  CHECK(f7.reduce(Scalar(1, 2)) == 4);
  CHECK(f7.parse_scalar("3/5") == f7.reduce(Scalar(3, 5)));
  CHECK(f7.div(1, 3) == 5);
}

TEST_CASE("rank examples") {
  Field q;
  CHECK(rank(q, Mat::identity(3)) == 3);
  CHECK(rank(q, Mat(3, 3)) == 0);
  CHECK(rank(Field::prime(2), dense(Field::prime(2), {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(Field::prime(3), dense(Field::prime(3), {{1, 2}, {2, 1}})) == 1);
  CHECK(rank(q, dense(q, {{1, 2}, {2, 1}})) == 2);
}

TEST_CASE("kernel examples") {
  Field q;
  CHECK(kernel_basis(q, Mat(3, 3)).dim() == 3);
  CHECK(kernel_basis(q, Mat::identity(3)).dim() == 0);
  Field f2 = Field::prime(2);
  Subspace k = kernel_basis(f2, dense(f2, {{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis()[0] == Vec{1, 1});
}

TEST_CASE("solve examples") {
  Field q;
  CHECK(solve(q, Mat::identity(2), Vec{1, 2}) == Vec{1, 2});
  CHECK_FALSE(solve(q, Mat(2, 2), Vec{1, 0}).has_value());
  CHECK(solve(q, dense(q, {{2}}), Vec{1}) == Vec{Scalar(1, 2)});
  // Echelon-canonical: free variables are zero.
  CHECK(solve(q, dense(q, {{1, 1}}), Vec{3}) == Vec{3, 0});
}

TEST_CASE("quotient_dim examples") {
  Field q;
  CHECK(quotient_dim(q, Subspace::whole(3), Subspace::whole(3)) == 0);
  CHECK(quotient_dim(q, Subspace::whole(3), Subspace::zero(3)) == 3);
  Subspace big = Subspace::span(q, 2, {{1, 0}, {0, 1}});
  Subspace small = Subspace::span(q, 2, {{1, 1}});
  CHECK(quotient_dim(q, big, small) == 1);
  Subspace line = Subspace::span(q, 3, {{1, 0, 0}});
  Subspace other = Subspace::span(q, 3, {{0, 1, 0}});
  CHECK_THROWS_AS(quotient_dim(q, line, other), NotASubspace);
}

TEST_CASE("subspace canonical form, sum, intersection") {
  Field q;
  Subspace a = Subspace::span(q, 3, {{2, 2, 0}, {0, 1, 1}});
  Subspace b = Subspace::span(q, 3, {{1, 2, 1}, {1, 0, -1}});
  CHECK(a == b);
  Subspace x = Subspace::span(q, 3, {{1, 0, 0}, {0, 1, 0}});
  Subspace y = Subspace::span(q, 3, {{0, 1, 0}, {0, 0, 1}});
  CHECK(sum(q, x, y).dim() == 3);
  Subspace i = intersection(q, x, y);
  REQUIRE(i.dim() == 1);
  CHECK(i.basis()[0] == Vec{0, 1, 0});
  auto c = a.coordinates(q, Vec{1, 3, 2});
  REQUIRE(c.has_value());
  CHECK(c->size() == 2);
  CHECK_FALSE(a.coordinates(q, Vec{1, 0, 0}).has_value());
}

TEST_CASE("quotient basis") {
  Field q;
  Subspace big = Subspace::whole(3);
  Subspace small = Subspace::span(q, 3, {{1, 1, 0}});
  QuotientBasis qb(q, big, small);
  CHECK(qb.dim() == 2);
  CHECK(qb.is_trivial_class(Vec{2, 2, 0}));
  CHECK_FALSE(qb.is_trivial_class(Vec{1, 0, 0}));
  Vec c1 = qb.coordinates(Vec{1, 0, 0});
  Vec c2 = qb.coordinates(Vec{0, -1, 0});
  CHECK(c1 == c2);
}

TEST_CASE("matrix algebra helpers") {
  Field q;
  Mat a = dense(q, {{1, 2}, {3, 4}});
  Mat b = dense(q, {{0, 1}, {1, 0}});
  CHECK(multiply(q, a, b) == dense(q, {{2, 1}, {4, 3}}));
  CHECK(kron(q, Mat::identity(2), b).rows() == 4);
  CHECK(kron(q, a, b).at(1, 0) == 1);
  CHECK(kron(q, a, b).at(0, 3) == 2);
  CHECK(hstack(q, {a, b}).cols() == 4);
  CHECK(vstack(q, {a, b}).rows() == 4);
  CHECK(direct_sum(q, {a, b}).at(2, 3) == 1);
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK(subtract(q, a, a).is_zero());
}

TEST_CASE("properties on random sparse matrices") {
  std::mt19937 rng(20240611);
  for (const Field& f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(101)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
      Mat m = random_sparse(f, rng, r, c, 0.3);
      std::size_t rk = rank(f, m);
      CHECK(rk == rank(f, m.transpose()));
      Subspace k = kernel_basis(f, m);
      CHECK(k.dim() + rk == c);
      for (const auto& v : k.basis()) CHECK(is_zero(m.apply(f, v)));
      CHECK(column_space(f, m).dim() == rk);
      Vec x(c);
      for (auto& e : x) e = f.reduce(Scalar(static_cast<int>(rng() % 7) - 3));
      Vec rhs = m.apply(f, x);
      auto sol = solve(f, m, rhs);
      REQUIRE(sol.has_value());
      CHECK(m.apply(f, *sol) == rhs);
    }
  }
}
