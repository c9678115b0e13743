#include "hhlab/liealg.hpp"

#include <algorithm>

namespace hhlab {

namespace {

Mat submatrix(const Field& f, const Mat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<long> col_index(m.cols(), -1);
  for (std::size_t k = 0; k < cols.size(); ++k) col_index[cols[k]] = static_cast<long>(k);
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& e : m.row(rows[r]))
      if (col_index[e.col] >= 0) t.push_back({r, static_cast<std::size_t>(col_index[e.col]), e.val});
  return Mat::from_triplets(f, rows.size(), cols.size(), std::move(t));
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

const TriangularLayout& layout_of(const Algebra& t) {
  if (!t.triangular()) throw BlockStructureViolated("algebra has no triangular block structure");
  return *t.triangular();
}

// Subspace of s on which the given coordinates vanish.
Subspace where_zero(const Field& f, const Subspace& s, const std::vector<std::size_t>& coords) {
  if (s.dim() == 0) return s;
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < coords.size(); ++r) t.push_back({r, coords[r], 1});
  Mat sel = Mat::from_triplets(f, coords.size(), s.ambient_dim(), std::move(t));
  Mat basis = s.as_columns(f);
  Subspace coeffs = kernel_basis(f, multiply(f, sel, basis));
  std::vector<Vec> vs;
  for (const auto& c : coeffs.basis()) vs.push_back(basis.apply(f, c));
  return Subspace::span(f, s.ambient_dim(), vs);
}

// vec indices of D[r][c] for r in rows, c in cols.
std::vector<std::size_t> block_coords(std::size_t n, const std::vector<std::size_t>& rows,
                                      const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> out;
  for (auto c : cols)
    for (auto r : rows) out.push_back(c * n + r);
  return out;
}

std::vector<Mat> as_matrices(const Subspace& s, std::size_t n) {
  std::vector<Mat> out;
  for (const auto& v : s.basis()) out.push_back(vec_to_mat(v, n, n));
  return out;
}

bool closed_under_bracket(const Field& f, const Subspace& s, std::size_t n) {
  auto mats = as_matrices(s, n);
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!s.contains(f, mat_to_vec(commutator(f, mats[i], mats[j])))) return false;
  return true;
}

bool abelian(const Field& f, const Subspace& s, std::size_t n) {
  auto mats = as_matrices(s, n);
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!commutator(f, mats[i], mats[j]).is_zero()) return false;
  return true;
}

// Basis indices of T_small = [A M_S; 0 B] inside T_big = [A M_0+...+M_k; 0 B]
// where `parts` are the dims of M_0..M_k and `kept` the chosen summands.
std::vector<std::size_t> kept_indices(std::size_t da, const std::vector<std::size_t>& parts,
                                      const std::vector<std::size_t>& kept, std::size_t db) {
  std::vector<std::size_t> out = range(0, da);
  std::vector<std::size_t> offsets;
  std::size_t off = da;
  for (auto p : parts) {
    offsets.push_back(off);
    off += p;
  }
  for (auto k : kept)
    for (std::size_t i = 0; i < parts[k]; ++i) out.push_back(offsets[k] + i);
  for (std::size_t i = 0; i < db; ++i) out.push_back(off + i);
  return out;
}

Vec stack(const std::vector<Vec>& parts) {
  Vec out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

Mat commutator(const Field& f, const Mat& x, const Mat& y) {
  return subtract(f, multiply(f, x, y), multiply(f, y, x));
}

Mat inner_derivation(const Algebra& t, const Vec& t0) {
  return subtract(t.field(), t.left_mult(t0), t.right_mult(t0));
}

bool is_derivation(const Algebra& t, const Mat& d) {
  const Field& f = t.field();
  const std::size_t n = t.dim();
  if (d.rows() != n || d.cols() != n) return false;
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(d.column(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod(n);
      for (const auto& e : t.product(i, j)) prod[e.col] = e.val;
      Vec lhs = d.apply(f, prod);
      Vec rhs = add(f, t.right_mult_basis(j).apply(f, cols[i]), t.left_mult_basis(i).apply(f, cols[j]));
      if (lhs != rhs) return false;
    }
  return true;
}

Vec DerivationSpace::classify(const Mat& d) const {
  const Algebra& t = *algebra;
  const Field& f = t.field();
  Mat g = d;
  if (t.triangular()) {
    // Subtract the inner derivation of [0 m0; 0 0] to reach the gauge m0 = 0.
    const auto& lay = *t.triangular();
    Vec unit_a(t.dim());
    for (std::size_t k = 0; k < lay.a->dim(); ++k) unit_a[k] = t.unit()[k];
    Vec img = d.apply(f, unit_a);
    Vec m0(t.dim());
    for (std::size_t r = lay.m_offset(); r < lay.b_offset(); ++r) m0[r] = f.reduce(-img[r]);
    g = subtract(f, d, inner_derivation(t, m0));
  }
  return hh1.coordinates(mat_to_vec(g));
}

DerivationSpace derivation_space(const AlgebraPtr& tp) {
  const Algebra& t = *tp;
  const Field& f = t.field();
  const std::size_t n = t.dim();
  check_budget(n * n * n, n * n, "Leibniz system");
  MatBuilder bld(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = (i * n + j) * n;
      for (const auto& e : t.product(i, j))
        for (std::size_t r = 0; r < n; ++r) bld.add(row + r, e.col * n + r, e.val);
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& e : t.product(s, j)) bld.add(row + e.col, i * n + s, -e.val);
        for (const auto& e : t.product(i, s)) bld.add(row + e.col, j * n + s, -e.val);
      }
    }
  Mat leibniz = std::move(bld).build(f);

  DerivationSpace ds;
  ds.algebra = tp;
  ds.der = kernel_basis(f, leibniz);
  std::vector<Vec> inner;
  for (std::size_t i = 0; i < n; ++i) inner.push_back(mat_to_vec(inner_derivation(t, unit_vec(n, i))));
  ds.inner = Subspace::span(f, n * n, inner);
  if (t.triangular()) {
    const auto& lay = *t.triangular();
    // M-part of D(1_A) vanishes.
    MatBuilder g(lay.m->dim(), n * n);
    for (std::size_t k = 0; k < lay.a->dim(); ++k)
      for (std::size_t r = 0; r < lay.m->dim(); ++r) g.add(r, k * n + lay.m_offset() + r, t.unit()[k]);
    ds.der_prime = kernel_basis(f, vstack(f, {leibniz, std::move(g).build(f)}));
    ds.int_prime = intersection(f, ds.inner, ds.der_prime);
  } else {
    ds.der_prime = ds.der;
    ds.int_prime = ds.inner;
  }
  ds.der_basis = as_matrices(ds.der, n);
  ds.int_basis = as_matrices(ds.inner, n);
  ds.hh1 = QuotientBasis(f, ds.der_prime, ds.int_prime);
  for (const auto& v : ds.hh1.representatives()) ds.hh1_basis.push_back(vec_to_mat(v, n, n));
  const std::size_t h = ds.hh1_basis.size();
  ds.bracket.assign(h, std::vector<Vec>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      ds.bracket[i][j] = ds.classify(commutator(f, ds.hh1_basis[i], ds.hh1_basis[j]));
  return ds;
}

TriangularParts triangular_parts(const Algebra& t) {
  const auto& lay = layout_of(t);
  return {lay.a, lay.b, lay.m};
}

TriangularDerivation decompose_derivation(const Algebra& t, const Mat& d) {
  const auto& lay = layout_of(t);
  const Field& f = t.field();
  if (!is_derivation(t, d)) throw NotADerivation("matrix is not a derivation of the algebra");
  const std::size_t n = t.dim();
  const auto ia = range(0, lay.m_offset()), im = range(lay.m_offset(), lay.b_offset()), ib = range(lay.b_offset(), n);
  auto zero_block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    return submatrix(f, d, rows, cols).is_zero();
  };
  if (!zero_block(ib, ia) || !zero_block(ib, im) || !zero_block(ia, im) || !zero_block(ia, ib))
    throw BlockStructureViolated("derivation has entries outside the triangular pattern");
  TriangularDerivation out;
  out.alpha = submatrix(f, d, ia, ia);
  out.mu = submatrix(f, d, im, im);
  out.beta = submatrix(f, d, ib, ib);
  Vec unit_a(n);
  for (auto k : ia) unit_a[k] = t.unit()[k];
  Vec img = d.apply(f, unit_a);
  for (auto r : im) out.m0.push_back(f.reduce(-img[r]));
  if (!(recompose_derivation(t, out) == d)) throw BlockStructureViolated("recomposition differs from the derivation");
  return out;
}

Mat recompose_derivation(const Algebra& t, const TriangularDerivation& d) {
  const auto& lay = layout_of(t);
  const Field& f = t.field();
  const Bimodule& m = *lay.m;
  const std::size_t mo = lay.m_offset(), bo = lay.b_offset();
  MatBuilder bld(t.dim(), t.dim());
  bld.add_block(0, 0, d.alpha);
  bld.add_block(mo, mo, d.mu);
  bld.add_block(bo, bo, d.beta);
  for (std::size_t k = 0; k < lay.a->dim(); ++k) {
    Vec v = m.left_matrix(k).apply(f, d.m0);
    for (std::size_t r = 0; r < v.size(); ++r)
      if (sgn(v[r]) != 0) bld.add(mo + r, k, -v[r]);
  }
  for (std::size_t k = 0; k < lay.b->dim(); ++k) {
    Vec v = m.right_matrix(k).apply(f, d.m0);
    for (std::size_t r = 0; r < v.size(); ++r)
      if (sgn(v[r]) != 0) bld.add(mo + r, bo + k, v[r]);
  }
  return std::move(bld).build(f);
}

bool bracket_check(const Algebra& t, const TriangularDerivation& d0, const TriangularDerivation& d1) {
  const Field& f = t.field();
  Mat c = commutator(f, recompose_derivation(t, d0), recompose_derivation(t, d1));
  TriangularDerivation got = decompose_derivation(t, c);
  TriangularDerivation want;
  want.alpha = commutator(f, d0.alpha, d1.alpha);
  want.beta = commutator(f, d0.beta, d1.beta);
  want.mu = commutator(f, d0.mu, d1.mu);
  want.m0 = subtract(f, d0.mu.apply(f, d1.m0), d1.mu.apply(f, d0.m0));
  return got.alpha == want.alpha && got.beta == want.beta && got.mu == want.mu && got.m0 == want.m0;
}

bool LieChecks::all_hold() const {
  auto ok = [](const std::optional<bool>& b) { return !b || *b; };
  return hh1_matches_cochain && jacobi && int_is_ideal && bracket_closes && ok(block_pattern) && ok(roundtrip) &&
         ok(bracket_formula) && ok(inner_dimension);
}

LieChecks lie_checks(const AlgebraPtr& tp) {
  const Algebra& t = *tp;
  const Field& f = t.field();
  const std::size_t n = t.dim();
  DerivationSpace ds = derivation_space(tp);
  LieChecks rep;
  rep.der_dim = ds.der.dim();
  rep.int_dim = ds.inner.dim();
  rep.hh1_dim = ds.hh1_dim();
  rep.cochain_hh1 = hh_dims(t, 3)[1];
  rep.hh1_matches_cochain = rep.hh1_dim == rep.cochain_hh1 && rep.der_dim - rep.int_dim == rep.hh1_dim;
  rep.bracket_closes = closed_under_bracket(f, ds.der, n);
  for (const auto& d : ds.der_basis)
    for (const auto& i : ds.int_basis)
      if (!ds.inner.contains(f, mat_to_vec(commutator(f, d, i)))) rep.int_is_ideal = false;
  // Jacobi on structure constants.
  const std::size_t h = ds.hh1_dim();
  auto br = [&](const Vec& x, std::size_t k) {
    Vec out = zero_vec(h);
    for (std::size_t l = 0; l < h; ++l)
      if (sgn(x[l]) != 0) out = add(f, out, scale(f, x[l], ds.bracket[l][k]));
    return out;
  };
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (std::size_t k = 0; k < h; ++k) {
        Vec s = add(f, add(f, br(ds.bracket[i][j], k), br(ds.bracket[j][k], i)), br(ds.bracket[k][i], j));
        if (!is_zero(s)) rep.jacobi = false;
      }
  if (t.triangular()) {
    const auto& lay = *t.triangular();
    bool pattern = true, roundtrip = true, formula = true;
    std::vector<TriangularDerivation> parts;
    for (const auto& d : ds.der_basis) {
      try {
        parts.push_back(decompose_derivation(t, d));
      } catch (const BlockStructureViolated&) {
        pattern = false;
        continue;
      }
      if (!(recompose_derivation(t, parts.back()) == d)) roundtrip = false;
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (!bracket_check(t, parts[i], parts[j])) formula = false;
    rep.block_pattern = pattern;
    rep.roundtrip = roundtrip;
    rep.bracket_formula = formula;
    // Int = T / Z(T), Z(T) = {(a, b) in ZA x ZB : am = mb}, so
    // dim Int = dim (A x B) - dim Z(T) + dim M. Replacing A x B by ZA x ZB
    // only agrees when A and B are commutative.
    const Algebra& a = *lay.a;
    const Algebra& b = *lay.b;
    const Bimodule& m = *lay.m;
    Subspace za = center(a), zb = center(b);
    std::vector<Vec> cols;
    for (const auto& z : za.basis()) cols.push_back(mat_to_vec(m.left_of(z)));
    for (const auto& z : zb.basis()) cols.push_back(scale(f, -1, mat_to_vec(m.right_of(z))));
    std::size_t pairs = 0;
    if (!cols.empty()) pairs = kernel_basis(f, Mat::from_columns(f, m.dim() * m.dim(), cols)).dim();
    rep.inner_dimension = rep.int_dim == a.dim() + b.dim() - pairs + m.dim();
    rep.center_only_formula = rep.int_dim == za.dim() + zb.dim() - pairs + m.dim();
  }
  return rep;
}

// ---------------------------------------------------------------------------

Mat restriction_map(const DerivationSpace& big, const DerivationSpace& small, const std::vector<std::size_t>& keep) {
  const Field& f = big.algebra->field();
  std::vector<Vec> cols;
  for (const auto& h : big.hh1_basis) cols.push_back(small.classify(submatrix(f, h, keep, keep)));
  return Mat::from_columns(f, small.hh1_dim(), cols);
}

bool SubalgebraDecomposition::all_hold() const {
  return direct_sum && hom_dims_match && int_inside_diagonal && sum_identity && intersection_identity &&
         subalgebras_closed && ideals_abelian && restrictions_are_lie_morphisms && same_image;
}

SubalgebraDecomposition lie_subalgebra_decomposition(const BimodulePtr& m, const BimodulePtr& n) {
  require_same_base(*m, *n);
  const Field& f = m->field();
  const AlgebraPtr a = m->left_ptr(), b = m->right_ptr();
  AlgebraPtr big = triangular_algebra(a, b, direct_sum(std::vector<BimodulePtr>{m, n}));
  AlgebraPtr small = triangular_algebra(a, b, m);
  DerivationSpace ds = derivation_space(big);
  DerivationSpace dm = derivation_space(small);
  const std::size_t dim = big->dim();
  const std::size_t da = a->dim(), dmm = m->dim(), dn = n->dim();
  const auto ia = range(0, da), im = range(da, da + dmm), in = range(da + dmm, da + dmm + dn),
             ib = range(da + dmm + dn, dim);
  const auto nm = block_coords(dim, in, im);  // N <- M
  const auto mn = block_coords(dim, im, in);  // M <- N
  auto all_but = [&](const std::vector<std::size_t>& keep) {
    std::vector<bool> mark(dim * dim, false);
    for (auto k : keep) mark[k] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dim * dim; ++k)
      if (!mark[k]) out.push_back(k);
    return out;
  };
  auto cat = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const Subspace& dp = ds.der_prime;
  Subspace diag = where_zero(f, dp, cat(nm, mn));
  Subspace upper = where_zero(f, dp, all_but(nm));  // only M -> N
  Subspace lower = where_zero(f, dp, all_but(mn));  // only N -> M

  SubalgebraDecomposition rep;
  rep.der_prime = dp.dim();
  rep.diagonal = diag.dim();
  rep.upper = upper.dim();
  rep.lower = lower.dim();
  rep.hom_mn = hom_space(*m, *n, HomSide::OverBoth).dim();
  rep.hom_nm = hom_space(*n, *m, HomSide::OverBoth).dim();
  rep.hh1 = ds.hh1_dim();
  const std::size_t ip = ds.int_prime.dim();
  rep.h_diagonal = diag.dim() - ip;
  rep.h_upper = rep.h_diagonal + upper.dim();
  rep.h_lower = rep.h_diagonal + lower.dim();
  rep.direct_sum = diag.dim() + upper.dim() + lower.dim() == dp.dim() && sum(f, sum(f, diag, upper), lower) == dp;
  rep.hom_dims_match = rep.upper == rep.hom_mn && rep.lower == rep.hom_nm;
  rep.int_inside_diagonal = diag.contains(f, ds.int_prime);
  Subspace d_mn = sum(f, diag, upper), d_nm = sum(f, diag, lower);
  rep.sum_identity = sum(f, d_mn, d_nm) == dp;
  rep.intersection_identity = intersection(f, d_mn, d_nm) == diag;
  rep.subalgebras_closed = closed_under_bracket(f, diag, dim) && closed_under_bracket(f, d_mn, dim) &&
                           closed_under_bracket(f, d_nm, dim);
  rep.ideals_abelian = abelian(f, upper, dim) && abelian(f, lower, dim);

  const auto keep = cat(cat(ia, im), ib);
  auto restrict = [&](const Mat& d) { return submatrix(f, d, keep, keep); };
  for (const Subspace* s : {&diag, &d_mn, &d_nm}) {
    auto mats = as_matrices(*s, dim);
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i + 1; j < mats.size(); ++j)
        if (!(restrict(commutator(f, mats[i], mats[j])) ==
              commutator(f, restrict(mats[i]), restrict(mats[j]))))
          rep.restrictions_are_lie_morphisms = false;
  }
  // Images in HH^1[A M; 0 B].
  auto image = [&](const Subspace& s) {
    std::vector<Vec> v;
    for (const auto& d : as_matrices(s, dim)) v.push_back(dm.classify(restrict(d)));
    return Subspace::span(f, dm.hh1_dim(), v);
  };
  Subspace full = column_space(f, restriction_map(ds, dm, keep));
  rep.same_image = image(diag) == full && image(d_mn) == full && image(d_nm) == full;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Solves nu L_a - L_a nu = L_{alpha(a)}, nu R_b - R_b nu = R_{beta(b)} on N.
std::optional<Vec> extend_over(const Bimodule& n, const Mat& alpha, const Mat& beta) {
  const Field& f = n.field();
  const std::size_t dn = n.dim();
  Mat id = Mat::identity(dn);
  std::vector<Mat> eqs;
  std::vector<Vec> rhs;
  for (std::size_t k = 0; k < n.left().dim(); ++k) {
    const Mat& l = n.left_matrix(k);
    eqs.push_back(subtract(f, kron(f, l.transpose(), id), kron(f, id, l)));
    rhs.push_back(mat_to_vec(n.left_of(alpha.column(k))));
  }
  for (std::size_t k = 0; k < n.right().dim(); ++k) {
    const Mat& r = n.right_matrix(k);
    eqs.push_back(subtract(f, kron(f, r.transpose(), id), kron(f, id, r)));
    rhs.push_back(mat_to_vec(n.right_of(beta.column(k))));
  }
  if (eqs.empty()) return zero_vec(dn * dn);
  return solve(f, vstack(f, eqs), stack(rhs));
}

std::optional<bool> exact_between(const Field& f, const Mat* in, const Mat* out, std::size_t dim) {
  std::size_t r_in = in ? rank(f, *in) : 0;
  std::size_t r_out = out ? rank(f, *out) : 0;
  bool zero = (in && out) ? multiply(f, *out, *in).is_zero() : true;
  return zero && r_in + r_out == dim;
}

}  // namespace

DeltaReport delta_report(const BimodulePtr& m, const BimodulePtr& n, std::size_t n_max) {
  require_same_base(*m, *n);
  const Field& f = m->field();
  const AlgebraPtr a = m->left_ptr(), b = m->right_ptr();
  AlgebraPtr tm = triangular_algebra(a, b, m);
  AlgebraPtr tmn = triangular_algebra(a, b, direct_sum(std::vector<BimodulePtr>{m, n}));
  DerivationSpace dsm = derivation_space(tm);
  DerivationSpace dsmn = derivation_space(tmn);
  if (n_max >= 3 && dsm.hh1_dim() != hh_dims(*tm, 3)[1]) throw Error("internal: HH^1 pipelines disagree");

  DeltaReport rep;
  rep.member = true;
  for (const auto& v : dsm.der_prime.basis()) {
    TriangularDerivation d = decompose_derivation(*tm, vec_to_mat(v, tm->dim(), tm->dim()));
    if (!extend_over(*n, d.alpha, d.beta)) {
      rep.member = false;
      rep.obstruction_witness = DeltaWitness{d.alpha, d.beta, d.mu};
      break;
    }
  }
  const std::size_t da = a->dim(), dmm = m->dim(), dn = n->dim(), db = b->dim();
  const auto keep = kept_indices(da, {dmm, dn}, {0}, db);
  Mat r1 = restriction_map(dsmn, dsm, keep);
  rep.restriction_surjective = rank(f, r1) == dsm.hh1_dim();
  if (!rep.member) return rep;

  // 0 -> Z(T_{M+N}) -> Z(T_M) -> End N -> H^1{M,N} -> HH^1(T_M) -> 0
  const std::size_t big = tmn->dim();
  Subspace z_big = center(*tmn), z_small = center(*tm);
  Subspace end_n = hom_space(*n, *n, HomSide::OverBoth);
  const auto nm = block_coords(big, range(da + dmm, da + dmm + dn), range(da, da + dmm));
  const auto mn = block_coords(big, range(da, da + dmm), range(da + dmm, da + dmm + dn));
  std::vector<std::size_t> off = nm;
  off.insert(off.end(), mn.begin(), mn.end());
  Subspace diag = where_zero(f, dsmn.der_prime, off);
  QuotientBasis h_diag(f, diag, dsmn.int_prime);

  std::vector<Vec> c0;
  for (const auto& z : z_big.basis()) {
    Vec r;
    for (auto k : keep) r.push_back(z[k]);
    auto c = z_small.coordinates(f, r);
    if (!c) throw Error("internal: restricted central element is not central");
    c0.push_back(*c);
  }
  Mat r0 = Mat::from_columns(f, z_small.dim(), c0);
  std::vector<Vec> c1;
  for (const auto& z : z_small.basis()) {
    Vec za(z.begin(), z.begin() + da);
    Vec zb(z.begin() + da + dmm, z.end());
    auto c = end_n.coordinates(f, mat_to_vec(subtract(f, n->left_of(za), n->right_of(zb))));
    if (!c) throw Error("internal: central pair does not give an endomorphism");
    c1.push_back(*c);
  }
  Mat zeta = Mat::from_columns(f, end_n.dim(), c1);
  std::vector<Vec> c2;
  for (const auto& v : end_n.basis()) {
    Mat nu = vec_to_mat(v, dn, dn);
    MatBuilder bld(big, big);
    bld.add_block(da + dmm, da + dmm, nu);
    c2.push_back(h_diag.coordinates(mat_to_vec(std::move(bld).build(f))));
  }
  Mat iota = Mat::from_columns(f, h_diag.dim(), c2);
  std::vector<Vec> c3;
  for (const auto& v : h_diag.representatives())
    c3.push_back(dsm.classify(submatrix(f, vec_to_mat(v, big, big), keep, keep)));
  Mat rho = Mat::from_columns(f, dsm.hh1_dim(), c3);

  SequenceReport seq;
  seq.kind = SequenceKind::DeltaFiveTerm;
  seq.nodes = {{"Z[A M+N; 0 B]", 0, z_big.dim()},
               {"Z[A M; 0 B]", 0, z_small.dim()},
               {"End(N)", 0, end_n.dim()},
               {"H^1{M,N}", 1, h_diag.dim()},
               {"HH^1[A M; 0 B]", 1, dsm.hh1_dim()}};
  seq.maps = {r0, zeta, iota, rho};
  for (std::size_t i = 0; i < seq.nodes.size(); ++i) {
    const Mat* in = i ? &seq.maps[i - 1] : nullptr;
    const Mat* out = i < seq.maps.size() ? &seq.maps[i] : nullptr;
    seq.exact_at.push_back(exact_between(f, in, out, seq.nodes[i].dim));
  }
  rep.sequence = std::move(seq);
  return rep;
}

DeltaClosureReport delta_closure_checks(const BimodulePtr& m, const std::vector<BimodulePtr>& witnesses) {
  DeltaClosureReport rep;
  auto member = [&](const BimodulePtr& n) { return delta_report(m, n, 0).member; };
  std::vector<bool> in(witnesses.size());
  for (std::size_t i = 0; i < witnesses.size(); ++i) in[i] = member(witnesses[i]);
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    for (std::size_t j = i; j < witnesses.size(); ++j) {
      const bool both = in[i] && in[j];
      const bool s = member(direct_sum(std::vector<BimodulePtr>{witnesses[i], witnesses[j]}));
      ++rep.checked;
      if (both && !s) rep.failures.push_back("sum of witnesses " + std::to_string(i) + " and " + std::to_string(j));
      if (s && !both)
        rep.failures.push_back("factor of the member sum " + std::to_string(i) + "+" + std::to_string(j));
    }
  for (std::size_t k = 1; k <= 3; ++k) {
    ++rep.checked;
    if (!member(power(m, k))) rep.failures.push_back("M^" + std::to_string(k));
  }
  return rep;
}

MorphismSearch restriction_morphism_search(const BimodulePtr& m, const BimodulePtr& n) {
  require_same_base(*m, *n);
  const Field& f = m->field();
  const AlgebraPtr a = m->left_ptr(), b = m->right_ptr();
  AlgebraPtr tm = triangular_algebra(a, b, m);
  AlgebraPtr tmn = triangular_algebra(a, b, direct_sum(std::vector<BimodulePtr>{m, n}));
  DerivationSpace dsm = derivation_space(tm);
  DerivationSpace dsmn = derivation_space(tmn);
  const auto keep = kept_indices(a->dim(), {m->dim(), n->dim()}, {0}, b->dim());
  Mat r1 = restriction_map(dsmn, dsm, keep);
  MorphismSearch rep;
  const std::size_t h = dsmn.hh1_dim();
  for (std::size_t i = 0; i < h && !rep.counterexample_found; ++i)
    for (std::size_t j = i + 1; j < h; ++j) {
      ++rep.pairs_checked;
      Vec lhs = r1.apply(f, dsmn.bracket[i][j]);
      Mat ri = submatrix(f, dsmn.hh1_basis[i], keep, keep), rj = submatrix(f, dsmn.hh1_basis[j], keep, keep);
      Vec rhs = dsm.classify(commutator(f, ri, rj));
      if (lhs != rhs) {
        rep.counterexample_found = true;
        rep.description = "basis classes " + std::to_string(i) + " and " + std::to_string(j) +
                          " of HH^1[A M+N; 0 B]: r1 of the bracket differs from the bracket of the images";
        break;
      }
    }
  return rep;
}

bool transitivity_check(const BimodulePtr& m, const BimodulePtr& m1, const BimodulePtr& m2) {
  require_same_base(*m, *m1);
  require_same_base(*m, *m2);
  const Field& f = m->field();
  const AlgebraPtr a = m->left_ptr(), b = m->right_ptr();
  const std::size_t da = a->dim(), db = b->dim();
  const std::vector<std::size_t> parts{m->dim(), m1->dim(), m2->dim()};
  auto tri = [&](std::vector<BimodulePtr> ms) { return derivation_space(triangular_algebra(a, b, direct_sum(ms))); };
  DerivationSpace d012 = tri({m, m1, m2}), d01 = tri({m, m1}), d02 = tri({m, m2}), d0 = tri({m});
  Mat big_01 = restriction_map(d012, d01, kept_indices(da, parts, {0, 1}, db));
  Mat big_02 = restriction_map(d012, d02, kept_indices(da, parts, {0, 2}, db));
  Mat big_0 = restriction_map(d012, d0, kept_indices(da, parts, {0}, db));
  Mat from01 = restriction_map(d01, d0, kept_indices(da, {parts[0], parts[1]}, {0}, db));
  Mat from02 = restriction_map(d02, d0, kept_indices(da, {parts[0], parts[2]}, {0}, db));
  return multiply(f, from01, big_01) == big_0 && multiply(f, from02, big_02) == big_0;
}

}  // namespace hhlab
