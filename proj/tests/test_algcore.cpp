#include "doctest.h"
#include "hhlab/algcore.hpp"
#include "hhlab/corpus.hpp"

using namespace hhlab;

namespace {

BimodulePtr kpow(const Field& f, std::size_t m) { return trivial_bimodule(ground_algebra(f), m); }

}  // namespace

TEST_CASE("validate_algebra") {
  Field q;
  CHECK(validate_algebra(*ground_algebra(q)).ok());
  CHECK(validate_algebra(*dual_numbers(q)).ok());
  Algebra bad(q, {"b1", "b2"}, {{0, 0, 1, 1}}, Vec{1, 0});
  auto rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok());
  bool unit_failure = false;
  for (const auto& s : rep.failures) unit_failure |= s.find("unit") != std::string::npos;
  CHECK(unit_failure);
  Algebra nonassoc(q, {"1", "x", "y"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1},
                                        {1, 1, 2, 1}, {1, 2, 0, 1}},
                   Vec{1, 0, 0});
  auto r2 = validate_algebra(nonassoc);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.failures.front().find("associativity") != std::string::npos);
  CHECK_THROWS_AS(make_algebra(q, {"b1", "b2"}, {{0, 0, 1, 1}}, Vec{1, 0}), ValidationError);
}

TEST_CASE("opposite") {
  Field q;
  auto d = dual_numbers(q);
  CHECK(opposite(*d)->same_structure(*d));
  auto u = upper_triangular(q, 2);
  auto uo = opposite(*u);
  CHECK_FALSE(uo->same_structure(*u));
  CHECK(validate_algebra(*uo).ok());
  CHECK(opposite(*uo)->same_structure(*u));
  auto a3 = upper_triangular(q, 3);
  CHECK(opposite(*opposite(*a3))->same_structure(*a3));
}

TEST_CASE("tensor_algebra") {
  Field q;
  auto k = ground_algebra(q);
  CHECK(tensor_algebra(*k, *k)->dim() == 1);
  CHECK(tensor_algebra(*k, *k)->same_structure(*k));
  auto kk = product_algebra(k, k);
  auto u = upper_triangular(q, 2);
  CHECK(tensor_algebra(*kk, *u)->dim() == 6);
  auto dd = tensor_algebra(*dual_numbers(q), *dual_numbers(q));
  CHECK(dd->dim() == 4);
  CHECK(validate_algebra(*dd).ok());
  CHECK(validate_algebra(*tensor_algebra(*u, *opposite(*u))).ok());
  CHECK_THROWS_AS(tensor_algebra(*k, *ground_algebra(Field::prime(2))), FieldMismatch);
}

TEST_CASE("triangular_algebra") {
  Field q;
  auto k = ground_algebra(q);
  auto k2 = triangular_algebra(k, k, kpow(q, 2));
  CHECK(k2->dim() == 4);
  CHECK(validate_algebra(*k2).ok());
  auto kk = triangular_algebra(k, k, zero_bimodule(k, k));
  CHECK(kk->dim() == 2);
  for (std::size_t m = 1; m <= 4; ++m) {
    auto t = triangular_algebra(k, k, kpow(q, m));
    CHECK(t->dim() == m + 2);
    CHECK(validate_algebra(*t).ok());
    REQUIRE(t->triangular().has_value());
    CHECK(t->triangular()->m_offset() == 1);
    CHECK(t->triangular()->b_offset() == m + 1);
  }
  // Same algebra as the upper triangular matrices, up to basis order.
  auto k1 = triangular_algebra(k, k, kpow(q, 1));
  auto a2 = upper_triangular(q, 2);
  CHECK(center(*k1).dim() == center(*a2).dim());
  // A nontrivial triangular algebra: [A A; 0 A] with A = K[e].
  auto d = dual_numbers(q);
  auto t = triangular_algebra(d, d, regular_bimodule(d));
  CHECK(t->dim() == 6);
  CHECK(validate_algebra(*t).ok());
  CHECK_THROWS_AS(triangular_algebra(d, k, kpow(q, 1)), IncompatibleBimodule);
}

TEST_CASE("bimodules and hom coefficients") {
  Field q;
  auto k = ground_algebra(q);
  auto hk = hom_coefficient_bimodule(*kpow(q, 1), *kpow(q, 1));
  CHECK(hk->dim() == 1);
  CHECK(hk->left().dim() == 1);
  CHECK(validate_bimodule(*hk).ok());
  CHECK(hom_coefficient_bimodule(*kpow(q, 2), *kpow(q, 3))->dim() == 6);
  auto d = dual_numbers(q);
  auto u = upper_triangular(q, 2);
  auto m = free_bimodule(d, u);
  CHECK(validate_bimodule(*m).ok());
  CHECK(actions_are_morphisms(*m));
  auto h = hom_coefficient_bimodule(*m, *m);
  CHECK(h->dim() == 36);
  CHECK(validate_bimodule(*h).ok());
  auto s = direct_sum({m, free_bimodule(d, u)});
  CHECK(s->dim() == 12);
  CHECK(validate_bimodule(*s).ok());
  auto reg = regular_bimodule(u);
  CHECK(validate_bimodule(*reg).ok());
  auto hb = hom_over_b(*m, *m);
  auto ha = hom_over_a(*m, *m);
  CHECK(validate_bimodule(*hb.module).ok());
  CHECK(validate_bimodule(*ha.module).ok());
  CHECK_THROWS_AS(hom_coefficient_bimodule(*m, *kpow(q, 1)), IncompatibleBimodule);
  Bimodule broken(k, k, {"x"}, {Mat::identity(1)}, {Mat(1, 1)});
  CHECK_FALSE(validate_bimodule(broken).ok());
}

TEST_CASE("center") {
  Field q;
  CHECK(center(*kronecker(q, 2)).dim() == 1);
  CHECK(center(*dual_numbers(q)).dim() == 2);
  CHECK(center(*kronecker(q, 1)).dim() == 1);
  CHECK(center(*matrix_algebra(q, 2)).dim() == 1);
}

TEST_CASE("end_algebra") {
  Field q;
  for (std::size_t m = 1; m <= 3; ++m) {
    auto e = end_algebra(*kpow(q, m), HomSide::OverA);
    CHECK(e.algebra->dim() == m * m);
    CHECK(validate_algebra(*e.algebra).ok());
  }
  CHECK(end_algebra(*kpow(q, 1), HomSide::OverBoth).algebra->dim() == 1);
  // End_A(A) for A = K_1, via the intertwining solve.
  auto k = ground_algebra(q);
  auto k1 = kronecker(q, 1);
  auto a_as_module = free_bimodule(k1, k);
  auto e = end_algebra(*a_as_module, HomSide::OverA);
  CHECK(e.algebra->dim() == 3);
  CHECK(validate_algebra(*e.algebra).ok());
  // End_A(A) is A^o; with the reversed product it is A again.
  auto eo = end_algebra(*a_as_module, HomSide::OverA, true);
  CHECK(center(*eo.algebra).dim() == 1);
  auto over = over_endomorphisms(*a_as_module);
  CHECK(validate_bimodule(*over).ok());
}
