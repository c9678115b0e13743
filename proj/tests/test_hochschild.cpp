#include "doctest.h"
#include "hhlab/corpus.hpp"
#include "hhlab/hochschild.hpp"

using namespace hhlab;

using Dims = std::vector<std::size_t>;

TEST_CASE("bar complex shapes") {
  Field q;
  auto k = ground_algebra(q);
  auto c = bar_cochain_complex(*k, *regular_bimodule(k), 4);
  CHECK(c.dims == Dims{1, 0, 0, 0});
  auto k2 = kronecker(q, 2);
  auto c2 = bar_cochain_complex(*k2, *regular_bimodule(k2), 4);
  CHECK(c2.dims[1] == 12);
  CHECK(c2.squares_to_zero());
  CHECK(multiply(q, c2.d[1], c2.d[0]).is_zero());
}

TEST_CASE("hh of small algebras") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
    CHECK(hh_dims(*ground_algebra(f), 4) == Dims{1, 0, 0});
    CHECK(hh_dims(*kronecker(f, 1), 4) == Dims{1, 0, 0});
    CHECK(hh_dims(*kronecker(f, 2), 4) == Dims{1, 3, 0});
    CHECK(hh_dims(*kronecker(f, 3), 4) == Dims{1, 8, 0});
    auto k = ground_algebra(f);
    CHECK(hh_dims(*product_algebra(k, k), 4) == Dims{2, 0, 0});
  }
}

TEST_CASE("normalised and plain bar complexes agree") {
  for (Field f : {Field::rationals(), Field::prime(2)}) {
    auto k = ground_algebra(f);
    std::vector<AlgebraPtr> algs = {k, kronecker(f, 1), kronecker(f, 2), dual_numbers(f), product_algebra(k, k),
                                    upper_triangular(f, 2)};
    for (const auto& t : algs) {
      auto reg = regular_bimodule(t);
      auto norm = cohomology(bar_cochain_complex(*t, *reg, 4), false).dims;
      auto plain_c = bar_cochain_complex(*t, *reg, 4, false);
      CHECK(plain_c.squares_to_zero());
      auto plain = cohomology(plain_c, false).dims;
      CHECK(norm == plain);
      CHECK(norm[0] == center(*t).dim());
    }
  }
}

TEST_CASE("dual numbers against the plain bar oracle") {
  Field q;
  auto d = dual_numbers(q);
  auto reg = regular_bimodule(d);
  auto plain = cohomology(bar_cochain_complex(*d, *reg, 5, false), false).dims;
  CHECK(hh_dims(*d, 5) == plain);
  CHECK(plain[0] == 2);
}

TEST_CASE("ext of K-bimodules") {
  Field q;
  auto k = ground_algebra(q);
  auto k1 = trivial_bimodule(k, 1), k2 = trivial_bimodule(k, 2);
  CHECK(ext_dims(*k2, *k2, 4) == Dims{4, 0, 0});
  CHECK(ext_dims(*k1, *k2, 4) == Dims{2, 0, 0});
}

TEST_CASE("Ext^0 is the space of bimodule maps") {
  Field q;
  auto d = dual_numbers(q);
  auto u = upper_triangular(q, 2);
  auto k = ground_algebra(q);
  std::vector<BimodulePtr> mods = {free_bimodule(d, u), regular_bimodule(d), regular_bimodule(u),
                                   free_bimodule(u, k)};
  for (const auto& m : mods) {
    auto e = ext_dims(*m, *m, 2);
    CHECK(e[0] == hom_space(*m, *m, HomSide::OverBoth).dim());
  }
}

TEST_CASE("cohomology representatives") {
  Field q;
  auto k2 = kronecker(q, 2);
  auto c = bar_cochain_complex(*k2, *regular_bimodule(k2), 3);
  auto r = cohomology(c);
  CHECK(r.dims == Dims{1, 3});
  for (std::size_t n = 0; n < r.dims.size(); ++n) {
    CHECK(r.representatives(n).size() == r.dims[n]);
    for (const auto& v : r.representatives(n)) CHECK(is_zero(c.d[n].apply(q, v)));
  }
}

TEST_CASE("budget") {
  Field q;
  auto k4 = kronecker(q, 4);
  std::size_t old = dense_budget();
  set_dense_budget(1000);
  CHECK_THROWS_AS(hh_dims(*k4, 4), DegreeTooLarge);
  set_dense_budget(old);
}
