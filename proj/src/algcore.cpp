#include "hhlab/algcore.hpp"

#include <algorithm>

namespace hhlab {

namespace {

std::string witness(const char* what, std::initializer_list<std::size_t> idx) {
  std::string s = what;
  s += " fails on basis (";
  bool first = true;
  for (auto i : idx) {
    if (!first) s += ", ";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

Mat mat_from_columns_sparse(const Field& f, std::size_t rows, const std::vector<SparseVec>& cols) {
  MatBuilder b(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& e : cols[c]) b.add(e.col, c, e.val);
  return std::move(b).build(f);
}

Mat combination(const Field& f, const std::vector<Mat>& mats, const Vec& coeffs, std::size_t n) {
  MatBuilder b(n, n);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) b.add_block(0, 0, mats[i], coeffs[i]);
  return std::move(b).build(f);
}

// Restricts the given ambient operators to an invariant subspace, in the
// coordinates of the subspace basis.
std::vector<Mat> restrict_ops(const Field& f, const Subspace& s, const std::vector<Mat>& ops) {
  std::vector<Mat> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    std::vector<Vec> cols;
    cols.reserve(s.dim());
    for (const auto& v : s.basis()) {
      auto c = s.coordinates(f, op.apply(f, v));
      if (!c) throw Error("internal: subspace is not invariant under an action");
      cols.push_back(*c);
    }
    out.push_back(Mat::from_columns(f, s.dim(), cols));
  }
  return out;
}

std::vector<std::string> prefixed(const std::string& p, const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(p + l);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra

std::size_t TriangularLayout::m_offset() const { return a->dim(); }
std::size_t TriangularLayout::b_offset() const { return a->dim() + m->dim(); }

Algebra::Algebra(Field f, std::vector<std::string> labels, const std::vector<MultTerm>& mult, Vec unit)
    : field_(f), labels_(std::move(labels)), unit_(std::move(unit)) {
  const std::size_t n = labels_.size();
  if (unit_.size() != n) throw ValidationError("unit vector has length " + std::to_string(unit_.size()) +
                                               ", expected " + std::to_string(n));
  for (auto& u : unit_) u = field_.reduce(u);
  std::vector<MatBuilder> tb(n * n, MatBuilder(1, n));
  for (const auto& t : mult) {
    if (t.i >= n || t.j >= n || t.k >= n)
      throw ValidationError(witness("index range", {t.i, t.j, t.k}));
    tb[t.i * n + t.j].add(0, t.k, t.c);
  }
  table_.reserve(n * n);
  for (auto& b : tb) {
    Mat row = std::move(b).build(field_);
    table_.push_back(row.rows() ? row.row(0) : SparseVec{});
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SparseVec> lcols(n), rcols(n);
    for (std::size_t j = 0; j < n; ++j) {
      lcols[j] = product(i, j);
      rcols[j] = product(j, i);
    }
    left_basis_.push_back(mat_from_columns_sparse(field_, n, lcols));
    right_basis_.push_back(mat_from_columns_sparse(field_, n, rcols));
  }
}

std::vector<MultTerm> Algebra::mult_terms() const {
  std::vector<MultTerm> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& e : product(i, j)) out.push_back({i, j, e.col, e.val});
  return out;
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(y[j]) == 0) continue;
      Scalar c = x[i] * y[j];
      for (const auto& e : product(i, j)) out[e.col] += c * e.val;
    }
  }
  for (auto& v : out) v = field_.reduce(v);
  return out;
}

Mat Algebra::left_mult(const Vec& x) const { return combination(field_, left_basis_, x, dim()); }
Mat Algebra::right_mult(const Vec& x) const { return combination(field_, right_basis_, x, dim()); }

bool Algebra::same_structure(const Algebra& o) const {
  if (field_ != o.field_ || dim() != o.dim() || unit_ != o.unit_) return false;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    const auto& a = table_[i];
    const auto& b = o.table_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].col != b[k].col || a[k].val != b[k].val) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bimodule

Bimodule::Bimodule(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels, std::vector<Mat> left_action,
                   std::vector<Mat> right_action)
    : left_alg_(std::move(left)),
      right_alg_(std::move(right)),
      labels_(std::move(labels)),
      left_act_(std::move(left_action)),
      right_act_(std::move(right_action)) {}

Bimodule Bimodule::from_terms(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels,
                              const std::vector<ActionTerm>& left_terms, const std::vector<ActionTerm>& right_terms) {
  if (left->field() != right->field()) throw FieldMismatch("bimodule sides are over different fields");
  const Field& f = left->field();
  const std::size_t n = labels.size();
  std::vector<MatBuilder> lb(left->dim(), MatBuilder(n, n)), rb(right->dim(), MatBuilder(n, n));
  for (const auto& t : left_terms) {
    if (t.alg >= left->dim() || t.m >= n || t.m_out >= n)
      throw ValidationError(witness("left action index range", {t.alg, t.m, t.m_out}));
    lb[t.alg].add(t.m_out, t.m, t.c);
  }
  for (const auto& t : right_terms) {
    if (t.alg >= right->dim() || t.m >= n || t.m_out >= n)
      throw ValidationError(witness("right action index range", {t.m, t.alg, t.m_out}));
    rb[t.alg].add(t.m_out, t.m, t.c);
  }
  std::vector<Mat> lm, rm;
  for (auto& b : lb) lm.push_back(std::move(b).build(f));
  for (auto& b : rb) rm.push_back(std::move(b).build(f));
  return Bimodule(std::move(left), std::move(right), std::move(labels), std::move(lm), std::move(rm));
}

Mat Bimodule::left_of(const Vec& a) const { return combination(field(), left_act_, a, dim()); }
Mat Bimodule::right_of(const Vec& b) const { return combination(field(), right_act_, b, dim()); }
Vec Bimodule::act_left(const Vec& a, const Vec& m) const { return left_of(a).apply(field(), m); }
Vec Bimodule::act_right(const Vec& m, const Vec& b) const { return right_of(b).apply(field(), m); }

std::vector<ActionTerm> Bimodule::left_terms() const {
  std::vector<ActionTerm> out;
  for (std::size_t a = 0; a < left_act_.size(); ++a)
    for (const auto& t : left_act_[a].triplets()) out.push_back({a, t.col, t.row, t.val});
  return out;
}

std::vector<ActionTerm> Bimodule::right_terms() const {
  std::vector<ActionTerm> out;
  for (std::size_t b = 0; b < right_act_.size(); ++b)
    for (const auto& t : right_act_[b].triplets()) out.push_back({b, t.col, t.row, t.val});
  return out;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport rep;
  const Field& f = a.field();
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec bi = unit_vec(n, i);
    if (a.multiply(a.unit(), bi) != bi) rep.failures.push_back(witness("left unit", {i}));
    if (a.multiply(bi, a.unit()) != bi) rep.failures.push_back(witness("right unit", {i}));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // (b_i b_j) b_k versus b_i (b_j b_k) for all k at once: compare
      // L_{b_i b_j} with L_i L_j.
      Mat lhs = a.left_mult(a.multiply(unit_vec(n, i), unit_vec(n, j)));
      Mat rhs = multiply(f, a.left_mult_basis(i), a.left_mult_basis(j));
      if (lhs == rhs) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (lhs.column(k) != rhs.column(k)) {
          rep.failures.push_back(witness("associativity", {i, j, k}));
          break;
        }
    }
  return rep;
}

ValidationReport validate_bimodule(const Bimodule& m) {
  ValidationReport rep;
  const Field& f = m.field();
  const Algebra& a = m.left();
  const Algebra& b = m.right();
  if (a.field() != b.field()) {
    rep.failures.push_back("left and right algebras are over different fields");
    return rep;
  }
  const Mat id = Mat::identity(m.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (m.left_matrix(i).rows() != m.dim() || m.left_matrix(i).cols() != m.dim()) {
      rep.failures.push_back(witness("left action shape", {i}));
      return rep;
    }
  for (std::size_t j = 0; j < b.dim(); ++j)
    if (m.right_matrix(j).rows() != m.dim() || m.right_matrix(j).cols() != m.dim()) {
      rep.failures.push_back(witness("right action shape", {j}));
      return rep;
    }
  if (!(m.left_of(a.unit()) == id)) rep.failures.push_back("left unit does not act as the identity");
  if (!(m.right_of(b.unit()) == id)) rep.failures.push_back("right unit does not act as the identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Mat lhs = m.left_of(a.multiply(unit_vec(a.dim(), i), unit_vec(a.dim(), j)));
      if (!(lhs == multiply(f, m.left_matrix(i), m.left_matrix(j))))
        rep.failures.push_back(witness("left module axiom (a_i a_j) m = a_i (a_j m)", {i, j}));
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      Mat lhs = m.right_of(b.multiply(unit_vec(b.dim(), i), unit_vec(b.dim(), j)));
      if (!(lhs == multiply(f, m.right_matrix(j), m.right_matrix(i))))
        rep.failures.push_back(witness("right module axiom m (b_i b_j) = (m b_i) b_j", {i, j}));
    }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      if (!(multiply(f, m.left_matrix(i), m.right_matrix(j)) == multiply(f, m.right_matrix(j), m.left_matrix(i))))
        rep.failures.push_back(witness("actions commute (a m) b = a (m b)", {i, j}));
  return rep;
}

AlgebraPtr make_algebra(Field f, std::vector<std::string> labels, const std::vector<MultTerm>& mult, Vec unit) {
  auto a = std::make_shared<const Algebra>(f, std::move(labels), mult, std::move(unit));
  auto rep = validate_algebra(*a);
  if (!rep.ok()) throw ValidationError(rep.failures.front());
  return a;
}

BimodulePtr make_bimodule(Bimodule m) {
  auto rep = validate_bimodule(m);
  if (!rep.ok()) throw ValidationError(rep.failures.front());
  return std::make_shared<const Bimodule>(std::move(m));
}

bool same_algebra(const Algebra& a, const Algebra& b) { return &a == &b || a.same_structure(b); }

void require_same_base(const Bimodule& m, const Bimodule& n) {
  if (m.field() != n.field()) throw FieldMismatch("bimodules are over different fields");
  if (!same_algebra(m.left(), n.left()) || !same_algebra(m.right(), n.right()))
    throw IncompatibleBimodule("bimodules are not over the same pair of algebras");
}

// ---------------------------------------------------------------------------
// Constructions

AlgebraPtr ground_algebra(const Field& f) {
  return std::make_shared<const Algebra>(f, std::vector<std::string>{"1"}, std::vector<MultTerm>{{0, 0, 0, 1}},
                                         Vec{1});
}

AlgebraPtr opposite(const Algebra& a) {
  std::vector<MultTerm> terms = a.mult_terms();
  for (auto& t : terms) std::swap(t.i, t.j);
  return std::make_shared<const Algebra>(a.field(), a.labels(), terms, a.unit());
}

AlgebraPtr tensor_algebra(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) throw FieldMismatch("tensor_algebra: algebras over different fields");
  const std::size_t nb = b.dim();
  std::vector<std::string> labels;
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) labels.push_back(x + "*" + y);
  std::vector<MultTerm> terms;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& ea : a.product(i, j))
        for (std::size_t k = 0; k < nb; ++k)
          for (std::size_t l = 0; l < nb; ++l)
            for (const auto& eb : b.product(k, l))
              terms.push_back({i * nb + k, j * nb + l, ea.col * nb + eb.col, ea.val * eb.val});
  Vec unit(a.dim() * nb);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < nb; ++k) unit[i * nb + k] = a.field().reduce(a.unit()[i] * b.unit()[k]);
  return std::make_shared<const Algebra>(a.field(), labels, terms, unit);
}

AlgebraPtr enveloping_algebra(const Algebra& a, const Algebra& b) { return tensor_algebra(a, *opposite(b)); }

AlgebraPtr triangular_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const BimodulePtr& m) {
  if (!same_algebra(m->left(), *a) || !same_algebra(m->right(), *b))
    throw IncompatibleBimodule("triangular_algebra: bimodule is not over (A, B)");
  const std::size_t da = a->dim(), dm = m->dim(), db = b->dim();
  const std::size_t mo = da, bo = da + dm;
  std::vector<std::string> labels = prefixed("a:", a->labels());
  for (const auto& l : prefixed("m:", m->labels())) labels.push_back(l);
  for (const auto& l : prefixed("b:", b->labels())) labels.push_back(l);
  std::vector<MultTerm> terms;
  for (const auto& t : a->mult_terms()) terms.push_back(t);
  for (const auto& t : b->mult_terms()) terms.push_back({bo + t.i, bo + t.j, bo + t.k, t.c});
  for (const auto& t : m->left_terms()) terms.push_back({t.alg, mo + t.m, mo + t.m_out, t.c});
  for (const auto& t : m->right_terms()) terms.push_back({mo + t.m, bo + t.alg, mo + t.m_out, t.c});
  Vec unit(da + dm + db);
  for (std::size_t i = 0; i < da; ++i) unit[i] = a->unit()[i];
  for (std::size_t i = 0; i < db; ++i) unit[bo + i] = b->unit()[i];
  auto t = std::make_shared<Algebra>(a->field(), labels, terms, unit);
  t->set_triangular({a, b, m});
  return t;
}

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return triangular_algebra(a, b, zero_bimodule(a, b));
}

AlgebraPtr matrix_algebra(const Field& f, std::size_t n) {
  std::vector<std::string> labels;
  std::vector<MultTerm> terms;
  Vec unit(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      for (std::size_t k = 0; k < n; ++k) terms.push_back({i * n + j, j * n + k, i * n + k, 1});
    }
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = 1;
  return std::make_shared<const Algebra>(f, labels, terms, unit);
}

BimodulePtr regular_bimodule(const AlgebraPtr& t) {
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < t->dim(); ++i) {
    l.push_back(t->left_mult_basis(i));
    r.push_back(t->right_mult_basis(i));
  }
  return std::make_shared<const Bimodule>(t, t, t->labels(), l, r);
}

BimodulePtr free_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
  const Field& f = a->field();
  std::vector<std::string> labels;
  for (const auto& x : a->labels())
    for (const auto& y : b->labels()) labels.push_back(x + "*" + y);
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) l.push_back(kron(f, a->left_mult_basis(i), Mat::identity(b->dim())));
  for (std::size_t j = 0; j < b->dim(); ++j) r.push_back(kron(f, Mat::identity(a->dim()), b->right_mult_basis(j)));
  return std::make_shared<const Bimodule>(a, b, labels, l, r);
}

BimodulePtr zero_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
  return std::make_shared<const Bimodule>(a, b, std::vector<std::string>{}, std::vector<Mat>(a->dim(), Mat(0, 0)),
                                          std::vector<Mat>(b->dim(), Mat(0, 0)));
}

BimodulePtr direct_sum(const std::vector<BimodulePtr>& parts) {
  if (parts.empty()) throw Error("direct_sum of an empty list has no base algebras");
  for (const auto& p : parts) require_same_base(*parts.front(), *p);
  const Field& f = parts.front()->field();
  const auto& a = parts.front()->left_ptr();
  const auto& b = parts.front()->right_ptr();
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& l : parts[k]->labels()) labels.push_back(parts.size() > 1 ? l + "#" + std::to_string(k) : l);
  std::vector<Mat> lm, rm;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) blocks.push_back(p->left_matrix(i));
    lm.push_back(hhlab::direct_sum(f, blocks));
  }
  for (std::size_t j = 0; j < b->dim(); ++j) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) blocks.push_back(p->right_matrix(j));
    rm.push_back(hhlab::direct_sum(f, blocks));
  }
  return std::make_shared<const Bimodule>(a, b, labels, lm, rm);
}

BimodulePtr power(const BimodulePtr& m, std::size_t k) {
  if (k == 0) return zero_bimodule(m->left_ptr(), m->right_ptr());
  return direct_sum(std::vector<BimodulePtr>(k, m));
}

BimodulePtr trivial_bimodule(const AlgebraPtr& ground, std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back("e" + std::to_string(i + 1));
  std::vector<Mat> l(ground->dim(), Mat::identity(k)), r(ground->dim(), Mat::identity(k));
  // A general ground algebra must have dim 1 here.
  if (ground->dim() != 1) throw IncompatibleBimodule("trivial_bimodule expects the ground field as algebra");
  return std::make_shared<const Bimodule>(ground, ground, labels, l, r);
}

BimodulePtr hom_coefficient_bimodule(const Bimodule& m, const Bimodule& n) {
  require_same_base(m, n);
  const Field& f = m.field();
  const Algebra& a = m.left();
  const Algebra& b = m.right();
  AlgebraPtr lambda = enveloping_algebra(a, b);
  const std::size_t dm = m.dim(), dn = n.dim();
  std::vector<Mat> lm, rm;
  Mat im = Mat::identity(dm), in = Mat::identity(dn);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      // (a_i (x) b_j) f = a_i f(.) b_j  and  f (a_i (x) b_j) = f(a_i . b_j).
      Mat on_n = multiply(f, n.left_matrix(i), n.right_matrix(j));
      Mat on_m = multiply(f, m.left_matrix(i), m.right_matrix(j));
      lm.push_back(kron(f, im, on_n));
      rm.push_back(kron(f, on_m.transpose(), in));
    }
  std::vector<std::string> labels;
  for (const auto& x : m.labels())
    for (const auto& y : n.labels()) labels.push_back(x + "->" + y);
  return std::make_shared<const Bimodule>(lambda, lambda, labels, lm, rm);
}

Mat vec_to_mat(const Vec& v, std::size_t dim_m, std::size_t dim_n) {
  std::vector<Triplet> t;
  for (std::size_t x = 0; x < dim_m; ++x)
    for (std::size_t y = 0; y < dim_n; ++y)
      if (sgn(v[x * dim_n + y]) != 0) t.push_back({y, x, v[x * dim_n + y]});
  // Entries are already canonical; any field reproduces them.
  return Mat::from_triplets(Field(), dim_n, dim_m, std::move(t));
}

Vec mat_to_vec(const Mat& f) {
  Vec v(f.rows() * f.cols());
  for (const auto& t : f.triplets()) v[t.col * f.rows() + t.row] = t.val;
  return v;
}

Subspace hom_space(const Bimodule& m, const Bimodule& n, HomSide side) {
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  Mat im = Mat::identity(dm), in = Mat::identity(dn);
  std::vector<Mat> eqs;
  if (side != HomSide::OverB) {
    if (!same_algebra(m.left(), n.left())) throw IncompatibleBimodule("hom_space: left algebras differ");
    for (std::size_t i = 0; i < m.left().dim(); ++i)
      eqs.push_back(subtract(f, kron(f, m.left_matrix(i).transpose(), in), kron(f, im, n.left_matrix(i))));
  }
  if (side != HomSide::OverA) {
    if (!same_algebra(m.right(), n.right())) throw IncompatibleBimodule("hom_space: right algebras differ");
    for (std::size_t j = 0; j < m.right().dim(); ++j)
      eqs.push_back(subtract(f, kron(f, m.right_matrix(j).transpose(), in), kron(f, im, n.right_matrix(j))));
  }
  if (eqs.empty()) return Subspace::whole(dm * dn);
  return kernel_basis(f, vstack(f, eqs));
}

HomBimodule hom_over_b(const Bimodule& m, const Bimodule& n) {
  require_same_base(m, n);
  const Field& f = m.field();
  Subspace s = hom_space(m, n, HomSide::OverB);
  Mat im = Mat::identity(m.dim()), in = Mat::identity(n.dim());
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < m.left().dim(); ++i) {
    l.push_back(kron(f, im, n.left_matrix(i)));
    r.push_back(kron(f, m.left_matrix(i).transpose(), in));
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < s.dim(); ++k) labels.push_back("h" + std::to_string(k));
  auto mod = std::make_shared<const Bimodule>(m.left_ptr(), m.left_ptr(), labels, restrict_ops(f, s, l),
                                              restrict_ops(f, s, r));
  return {s, mod};
}

HomBimodule hom_over_a(const Bimodule& m, const Bimodule& n) {
  require_same_base(m, n);
  const Field& f = m.field();
  Subspace s = hom_space(m, n, HomSide::OverA);
  Mat im = Mat::identity(m.dim()), in = Mat::identity(n.dim());
  std::vector<Mat> l, r;
  for (std::size_t j = 0; j < m.right().dim(); ++j) {
    l.push_back(kron(f, m.right_matrix(j).transpose(), in));
    r.push_back(kron(f, im, n.right_matrix(j)));
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < s.dim(); ++k) labels.push_back("h" + std::to_string(k));
  auto mod = std::make_shared<const Bimodule>(m.right_ptr(), m.right_ptr(), labels, restrict_ops(f, s, l),
                                              restrict_ops(f, s, r));
  return {s, mod};
}

Subspace center(const Algebra& a) {
  const Field& f = a.field();
  std::vector<Mat> eqs;
  // z b_i - b_i z = (R_i - L_i) z.
  for (std::size_t i = 0; i < a.dim(); ++i) eqs.push_back(subtract(f, a.right_mult_basis(i), a.left_mult_basis(i)));
  if (eqs.empty()) return Subspace::zero(0);
  return kernel_basis(f, vstack(f, eqs));
}

EndAlgebra end_algebra(const Bimodule& m, HomSide side, bool opposite_product) {
  const Field& f = m.field();
  const std::size_t d = m.dim();
  Subspace s = hom_space(m, m, side);
  EndAlgebra out;
  for (const auto& v : s.basis()) out.basis.push_back(vec_to_mat(v, d, d));
  std::vector<MultTerm> terms;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      Mat p = opposite_product ? multiply(f, out.basis[j], out.basis[i]) : multiply(f, out.basis[i], out.basis[j]);
      auto c = s.coordinates(f, mat_to_vec(p));
      if (!c) throw Error("internal: endomorphism space not closed under composition");
      for (std::size_t k = 0; k < c->size(); ++k)
        if (sgn((*c)[k]) != 0) terms.push_back({i, j, k, (*c)[k]});
    }
  auto unit = s.coordinates(f, mat_to_vec(Mat::identity(d)));
  if (!unit) throw Error("internal: identity is not an endomorphism");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < s.dim(); ++k) labels.push_back("phi" + std::to_string(k));
  out.algebra = std::make_shared<const Algebra>(f, labels, terms, *unit);
  return out;
}

BimodulePtr over_endomorphisms(const Bimodule& m) {
  EndAlgebra e = end_algebra(m, HomSide::OverA, true);
  std::vector<Mat> l;
  for (std::size_t i = 0; i < m.left().dim(); ++i) l.push_back(m.left_matrix(i));
  return std::make_shared<const Bimodule>(m.left_ptr(), e.algebra, m.labels(), l, e.basis);
}

bool actions_are_morphisms(const Bimodule& m) {
  const Field& f = m.field();
  const Algebra& a = m.left();
  const Algebra& b = m.right();
  Mat id = Mat::identity(m.dim());
  if (!(m.left_of(a.unit()) == id) || !(m.right_of(b.unit()) == id)) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!(m.left_of(a.multiply(unit_vec(a.dim(), i), unit_vec(a.dim(), j))) ==
            multiply(f, m.left_matrix(i), m.left_matrix(j))))
        return false;
  // beta : B -> (End_A M)^o, so beta(b_i b_j) = beta(b_j) o beta(b_i).
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      if (!(m.right_of(b.multiply(unit_vec(b.dim(), i), unit_vec(b.dim(), j))) ==
            multiply(f, m.right_matrix(j), m.right_matrix(i))))
        return false;
  return true;
}

}  // namespace hhlab
