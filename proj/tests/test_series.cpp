#include <doctest.h>

#include "hhlab/corpus.hpp"
#include "hhlab/series.hpp"

using namespace hhlab;

namespace {

BimodulePtr simple_top(const Field& f, bool second) {
  AlgebraPtr a2 = upper_triangular(f, 2);
  AlgebraPtr k = ground_algebra(f);
  std::vector<Mat> l{Mat::from_dense(f, {{second ? 0 : 1}}, 1), Mat::from_dense(f, {{0}}, 1),
                     Mat::from_dense(f, {{second ? 1 : 0}}, 1)};
  return make_bimodule(Bimodule(a2, k, {"s"}, l, {Mat::identity(1)}));
}

}  // namespace

TEST_CASE("Poincare polynomials") {
  const Field f = Field::rationals();
  CHECK(poincare_poly(*kronecker(f, 3), 4).to_string() == "1 + 8t");
  CHECK(poincare_poly(*kronecker(f, 1), 4).to_string() == "1");
  CHECK(poincare_poly(*product_algebra(ground_algebra(f), ground_algebra(f)), 4).to_string() == "2");
  CHECK(PoincarePoly{{1, 1, 2}, 4}.to_string() == "1 + t + 2t^2");
  CHECK(PoincarePoly{{0, 0}, 3}.to_string() == "0");
  for (const Field& g : {Field::rationals(), Field::prime(2), Field::prime(3)})
    for (std::size_t m = 1; m <= 4; ++m)
      CHECK(poincare_poly(*kronecker(g, m), 4).coefficients == std::vector<std::size_t>{1, m * m - 1, 0});
}

TEST_CASE("Kronecker series identity") {
  const Field f = Field::rationals();
  AlgebraPtr k = ground_algebra(f);
  auto r = kronecker_series_check(trivial_bimodule(k, 1), 3, 4);
  CHECK(r.lhs == std::vector<std::size_t>{1, 8, 0});
  CHECK(r.all_hold());
  auto r2 = kronecker_series_check(trivial_bimodule(k, 2), 2, 4);
  CHECK(r2.lhs == std::vector<std::size_t>{1, 15, 0});
  CHECK(r2.rhs == r2.lhs);
  std::vector<BimodulePtr> ms{trivial_bimodule(k, 1), trivial_bimodule(k, 2), simple_top(f, false),
                              simple_top(f, true), regular_bimodule(dual_numbers(f))};
  for (const auto& m : ms)
    for (std::size_t mult : {1, 2, 3}) {
      CAPTURE(mult);
      CHECK(kronecker_series_check(m, mult, 3).all_hold());
    }
}

TEST_CASE("mod p periodicity") {
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = Field::prime(p);
    std::map<std::size_t, PoincarePoly> chi;
    AlgebraPtr k = ground_algebra(f);
    for (std::size_t m = 1; m <= 4; ++m)
      chi[m] = poincare_poly(*triangular_algebra(k, k, power(trivial_bimodule(k, 1), m)), 4);
    auto r = modp_periodicity_check(chi, p);
    CHECK(r.holds());
    if (p == 2) CHECK(r.classes.at(1) == std::vector<std::size_t>{1, 3});
    if (p == 3) CHECK(r.classes.at(1) == std::vector<std::size_t>{1, 2, 4});
  }
}

TEST_CASE("projective split identity") {
  const Field f = Field::rationals();
  AlgebraPtr k = ground_algebra(f);
  for (std::size_t m = 1; m <= 3; ++m) {
    auto r = projective_split_check(k, trivial_bimodule(k, 1), m, 4);
    CHECK(r.all_hold());
    CHECK(r.split.lhs_dims == std::vector<std::size_t>{1, m * m - 1, 0});
  }
  AlgebraPtr k1 = kronecker(f, 1);
  CHECK(projective_split_check(k1, free_bimodule(k1, k), 1, 4).all_hold());
  auto r = projective_split_check(k, trivial_bimodule(k, 2), 1, 4);
  CHECK(r.end_dim == 4);
  CHECK(r.split.rhs_dims == std::vector<std::size_t>{1, 0, 0});
  CHECK(r.all_hold());

  auto s1 = simple_top(f, false);
  CHECK(projective_split_check(s1->left_ptr(), s1, 2, 4).all_hold());
  auto s2 = simple_top(f, true);
  CHECK_THROWS_AS(projective_section(*s2), NotProjective);
  CHECK_THROWS_AS(projective_split_check(s2->left_ptr(), s2, 2, 4), NotProjective);
}
