#include "hhlab/series.hpp"

#include <algorithm>

namespace hhlab {

namespace {

bool all_true(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace

std::string PoincarePoly::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const std::size_t c = coefficients[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

PoincarePoly poincare_poly(const Algebra& t, std::size_t n_max) { return {hh_dims(t, n_max), n_max}; }

bool SeriesComparison::all_hold() const { return all_true(holds); }

SeriesComparison kronecker_series_check(const BimodulePtr& m, std::size_t mult, std::size_t n_max) {
  if (mult == 0) throw Error("multiplicity must be at least 1");
  const AlgebraPtr a = m->left_ptr(), b = m->right_ptr();
  SeriesComparison r;
  r.lhs = hh_dims(*triangular_algebra(a, b, power(m, mult)), n_max);
  auto base = hh_dims(*triangular_algebra(a, b, m), n_max);
  auto xi = ext_dims(*m, *m, n_max);
  const std::size_t c = mult * mult - 1;
  for (std::size_t n = 0; n < base.size(); ++n) {
    r.rhs.push_back(base[n] + (n ? c * xi[n - 1] : 0));
    r.holds.push_back(r.lhs[n] == r.rhs[n]);
  }
  return r;
}

ModpReport modp_periodicity_check(const std::map<std::size_t, PoincarePoly>& chi, std::uint32_t p) {
  if (p < 2) throw Error("modp_periodicity_check: p must be a prime");
  ModpReport r;
  r.p = p;
  for (const auto& [mult, poly] : chi) r.classes[(mult * mult) % p].push_back(mult);
  auto reduce = [&](const PoincarePoly& x) {
    std::vector<std::size_t> v;
    for (auto c : x.coefficients) v.push_back(c % p);
    return v;
  };
  for (const auto& [cls, mults] : r.classes)
    for (std::size_t i = 1; i < mults.size(); ++i)
      if (reduce(chi.at(mults[0])) != reduce(chi.at(mults[i])))
        r.failures.push_back("m=" + std::to_string(mults[0]) + " and m=" + std::to_string(mults[i]) +
                             " differ mod " + std::to_string(p));
  return r;
}

bool ProjectiveSplitReport::all_hold() const { return split.all_hold() && all_true(end_identity); }

Mat projective_section(const Bimodule& m) {
  if (m.right().dim() != 1) throw Error("expected a left module, i.e. an (A, K)-bimodule");
  const Field& f = m.field();
  const std::size_t d = m.dim(), da = m.left().dim();
  BimodulePtr free = power(free_bimodule(m.left_ptr(), m.right_ptr()), d);
  // pi(a_j in copy i) = a_j x_i
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < da; ++j) cols.push_back(m.left_matrix(j).column(i));
  Mat pi = Mat::from_columns(f, d, cols);
  Subspace hom = hom_space(m, *free, HomSide::OverA);
  std::vector<Vec> eq;
  for (const auto& v : hom.basis()) eq.push_back(mat_to_vec(multiply(f, pi, vec_to_mat(v, d, free->dim()))));
  if (d == 0) return Mat(0, 0);
  std::optional<Vec> c;
  if (!eq.empty()) c = solve(f, Mat::from_columns(f, d * d, eq), mat_to_vec(Mat::identity(d)));
  if (!c) throw NotProjective("no A-linear section of the free cover of " + std::to_string(d) + "-dimensional module");
  Vec s = zero_vec(d * free->dim());
  for (std::size_t k = 0; k < hom.dim(); ++k) s = add(f, s, scale(f, (*c)[k], hom.basis()[k]));
  return vec_to_mat(s, d, free->dim());
}

ProjectiveSplitReport projective_split_check(const AlgebraPtr& a, const BimodulePtr& m, std::size_t mult,
                                             std::size_t n_max) {
  if (mult == 0) throw Error("multiplicity must be at least 1");
  if (m->left_ptr() != a) throw IncompatibleBimodule("module is not over the given algebra");
  projective_section(*m);
  BimodulePtr mb = over_endomorphisms(*m);
  const AlgebraPtr b = mb->right_ptr();
  ProjectiveSplitReport r;
  r.end_dim = b->dim();
  r.split.section_found = true;
  r.split.lhs_dims = hh_dims(*triangular_algebra(a, b, power(mb, mult)), n_max);
  r.split.mid_dims = hh_dims(*a, n_max);
  r.split.rhs_dims = hh_dims(*b, n_max);
  r.ext_dims = ext_dims(*mb, *mb, n_max);
  const std::size_t c = mult * mult - 1;
  for (std::size_t n = 0; n < r.split.lhs_dims.size(); ++n) {
    const std::size_t want = r.split.mid_dims[n] + (n ? c * r.split.rhs_dims[n - 1] : 0);
    r.split.identity_holds.push_back(r.split.lhs_dims[n] == want);
    r.end_identity.push_back(r.split.rhs_dims[n] == r.ext_dims[n]);
  }
  return r;
}

}  // namespace hhlab
