#include "hhlab/exactla.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

namespace hhlab {

// ---------------------------------------------------------------------------
// Field

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text.starts_with("Fp:")) {
    std::uint32_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size())
      throw ParseError("bad field characteristic in '" + std::string(text) + "'");
    return prime(p);
  }
  throw ParseError("unknown field '" + std::string(text) + "' (expected Q or Fp:P)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar Field::reduce(const Scalar& x) const {
  if (p_ == 0) return x;
  unsigned long num = mpz_fdiv_ui(x.get_num_mpz_t(), p_);
  unsigned long den = mpz_fdiv_ui(x.get_den_mpz_t(), p_);
  if (den == 0) throw Error("denominator of " + x.get_str() + " vanishes mod " + std::to_string(p_));
  if (den == 1) return Scalar(num);
  mpz_class inv;
  mpz_class d(den), p(p_);
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
  return Scalar((num * inv.get_ui()) % p_);
}

Scalar Field::inverse(const Scalar& x) const {
  if (x == 0) throw Error("division by zero");
  if (p_ == 0) return 1 / x;
  Scalar r = reduce(x);
  mpz_class inv;
  mpz_class p(p_);
  mpz_invert(inv.get_mpz_t(), r.get_num_mpz_t(), p.get_mpz_t());
  return Scalar(inv);
}

Scalar Field::parse_scalar(std::string_view text) const {
  Scalar s;
  if (s.set_str(std::string(text), 10) != 0)
    throw ParseError("bad scalar '" + std::string(text) + "'");
  s.canonicalize();
  return reduce(s);
}

std::string Field::format(const Scalar& x) const { return reduce(x).get_str(); }

// ---------------------------------------------------------------------------
// Elimination kernels. Two arithmetic policies share one sparse echelon
// implementation.

namespace {

struct RationalOps {
  using Elem = mpq_class;
  Elem from(const Scalar& s) const { return s; }
  Scalar to(const Elem& e) const { return e; }
  static bool zero(const Elem& e) { return sgn(e) == 0; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return 1 / a; }
};

struct ModOps {
  using Elem = std::uint64_t;
  std::uint64_t p;
  Elem from(const Scalar& s) const { return mpz_fdiv_ui(s.get_num_mpz_t(), p); }
  Scalar to(Elem e) const { return Scalar(static_cast<unsigned long>(e)); }
  static bool zero(Elem e) { return e == 0; }
  Elem mul(Elem a, Elem b) const { return a * b % p; }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    Elem result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
};

template <class Ops>
using Row = std::vector<std::pair<std::uint32_t, typename Ops::Elem>>;

// r[start:] -= c * piv, where every column of piv is >= r[start].first.
template <class Ops>
void sub_scaled(const Ops& ops, Row<Ops>& r, std::size_t start, const typename Ops::Elem& c,
                const Row<Ops>& piv) {
  Row<Ops> out;
  out.reserve(r.size() - start + piv.size());
  std::size_t i = start, j = 0;
  while (i < r.size() || j < piv.size()) {
    if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || piv[j].first < r[i].first) {
      out.emplace_back(piv[j].first, ops.neg(ops.mul(c, piv[j].second)));
      ++j;
    } else {
      auto v = ops.sub(r[i].second, ops.mul(c, piv[j].second));
      if (!Ops::zero(v)) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.resize(start);
  for (auto& e : out) r.push_back(std::move(e));
}

template <class Ops>
void scale_row(const Ops& ops, Row<Ops>& r, const typename Ops::Elem& c) {
  for (auto& e : r) e.second = ops.mul(e.second, c);
}

// Incremental sparse row echelon form. Rows are normalised to leading
// coefficient one; optional tags record each row as a combination of the
// inserted rows.
template <class Ops>
class Echelon {
 public:
  Echelon(Ops ops, std::size_t ncols, bool track)
      : ops_(std::move(ops)), pivot_of_col_(ncols, -1), track_(track) {}

  bool insert(Row<Ops> r, Row<Ops> tag = {}) {
    reduce(r, track_ ? &tag : nullptr);
    if (r.empty()) return false;
    auto lead_inv = ops_.inv(r.front().second);
    scale_row(ops_, r, lead_inv);
    if (track_) scale_row(ops_, tag, lead_inv);
    pivot_of_col_[r.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    if (track_) tags_.push_back(std::move(tag));
    return true;
  }

  void reduce(Row<Ops>& r, Row<Ops>* tag, std::size_t start = 0) const {
    std::size_t pos = start;
    while (pos < r.size()) {
      int pr = pivot_of_col_[r[pos].first];
      if (pr < 0) {
        ++pos;
        continue;
      }
      auto c = r[pos].second;
      sub_scaled(ops_, r, pos, c, rows_[pr]);
      if (tag) {
        const auto& t = tags_[pr];
        if (!t.empty()) {
          // Tags are not column-ordered relative to a pivot; do a full merge.
          sub_scaled(ops_, *tag, 0, c, t);
        }
      }
    }
  }

  // Bring the rows into reduced row echelon form, sorted by pivot column.
  void make_reduced() {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first < rows_[b].front().first; });
    std::vector<Row<Ops>> rows;
    std::vector<Row<Ops>> tags;
    rows.reserve(rows_.size());
    for (auto i : order) {
      rows.push_back(std::move(rows_[i]));
      if (track_) tags.push_back(std::move(tags_[i]));
    }
    rows_ = std::move(rows);
    tags_ = std::move(tags);
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_of_col_[rows_[i].front().first] = static_cast<int>(i);
    for (std::size_t i = rows_.size(); i-- > 0;) {
      // Pivot rows below i are already reduced, so one pass clears every
      // pivot column of row i except its own.
      Row<Ops>& r = rows_[i];
      std::size_t pos = 1;
      while (pos < r.size()) {
        int pr = pivot_of_col_[r[pos].first];
        if (pr < 0) {
          ++pos;
          continue;
        }
        auto c = r[pos].second;
        sub_scaled(ops_, r, pos, c, rows_[pr]);
        if (track_ && !tags_[pr].empty()) sub_scaled(ops_, tags_[i], 0, c, tags_[pr]);
      }
    }
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row<Ops>>& rows() const { return rows_; }
  const std::vector<Row<Ops>>& tags() const { return tags_; }
  const Ops& ops() const { return ops_; }

 private:
  Ops ops_;
  std::vector<Row<Ops>> rows_;
  std::vector<Row<Ops>> tags_;
  std::vector<int> pivot_of_col_;
  bool track_;
};

template <class Ops>
Row<Ops> to_row(const Ops& ops, const SparseVec& v) {
  Row<Ops> r;
  r.reserve(v.size());
  for (const auto& e : v) r.emplace_back(e.col, ops.from(e.val));
  return r;
}

template <class Ops>
Row<Ops> to_row(const Ops& ops, const Vec& v) {
  Row<Ops> r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) r.emplace_back(static_cast<std::uint32_t>(i), ops.from(v[i]));
  return r;
}

template <class Ops>
Vec to_dense(const Ops& ops, const Row<Ops>& r, std::size_t n) {
  Vec v(n);
  for (const auto& [c, x] : r) v[c] = ops.to(x);
  return v;
}

template <class Ops>
SparseVec to_sparse(const Ops& ops, const Row<Ops>& r) {
  SparseVec v;
  v.reserve(r.size());
  for (const auto& [c, x] : r) v.push_back({c, ops.to(x)});
  return v;
}

// Calls fn(ops) with the arithmetic policy for f.
template <class Fn>
decltype(auto) with_ops(const Field& f, Fn&& fn) {
  if (f.is_prime_field()) return fn(ModOps{f.characteristic()});
  return fn(RationalOps{});
}

}  // namespace

// ---------------------------------------------------------------------------
// Mat

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<std::uint32_t>(i), 1});
  return m;
}

Mat Mat::from_triplets(const Field& f, std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  MatBuilder b(rows, cols);
  for (auto& t : entries) b.add(t.row, t.col, t.val);
  return std::move(b).build(f);
}

Mat Mat::from_dense(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
  MatBuilder b(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(rows[r][c]) != 0) b.add(r, c, rows[r][c]);
  return std::move(b).build(f);
}

Mat Mat::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& columns) {
  MatBuilder b(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (sgn(columns[c][r]) != 0) b.add(r, c, columns[c][r]);
  return std::move(b).build(f);
}

std::size_t Mat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Scalar Mat::at(std::size_t r, std::size_t c) const {
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->val;
  return 0;
}

std::vector<Triplet> Mat::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) out.push_back({r, e.col, e.val});
  return out;
}

std::vector<Vec> Mat::dense() const {
  std::vector<Vec> out(rows_, Vec(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) out[r][e.col] = e.val;
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) t.data_[e.col].push_back({static_cast<std::uint32_t>(r), e.val});
  return t;
}

Vec Mat::apply(const Field& f, const Vec& x) const {
  Vec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (const auto& e : data_[r])
      if (sgn(x[e.col]) != 0) acc += e.val * x[e.col];
    y[r] = f.reduce(acc);
  }
  return y;
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

bool Mat::operator==(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& a = data_[r];
    const auto& b = other.data_[r];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].col != b[i].col || a[i].val != b[i].val) return false;
  }
  return true;
}

void MatBuilder::add(std::size_t row, std::size_t col, const Scalar& val) {
  if (row >= rows_ || col >= cols_) throw Error("matrix index out of range");
  if (sgn(val) != 0) entries_.push_back({row, col, val});
}

void MatBuilder::add_block(std::size_t row0, std::size_t col0, const Mat& block, const Scalar& scale) {
  if (sgn(scale) == 0) return;
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (const auto& e : block.row(r)) add(row0 + r, col0 + e.col, scale * e.val);
}

Mat MatBuilder::build(const Field& f) && {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  Mat m(rows_, cols_);
  std::size_t i = 0;
  while (i < entries_.size()) {
    std::size_t j = i;
    Scalar acc = 0;
    while (j < entries_.size() && entries_[j].row == entries_[i].row && entries_[j].col == entries_[i].col)
      acc += entries_[j++].val;
    acc = f.reduce(acc);
    if (sgn(acc) != 0)
      m.data_[entries_[i].row].push_back({static_cast<std::uint32_t>(entries_[i].col), std::move(acc)});
    i = j;
  }
  entries_.clear();
  return m;
}

Mat multiply(const Field& f, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error("multiply: shape mismatch");
  MatBuilder out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& ea : a.row(r))
      for (const auto& eb : b.row(ea.col)) out.add(r, eb.col, ea.val * eb.val);
  return std::move(out).build(f);
}

Mat add(const Field& f, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("add: shape mismatch");
  MatBuilder out(a.rows(), a.cols());
  out.add_block(0, 0, a);
  out.add_block(0, 0, b);
  return std::move(out).build(f);
}

Mat subtract(const Field& f, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("subtract: shape mismatch");
  MatBuilder out(a.rows(), a.cols());
  out.add_block(0, 0, a);
  out.add_block(0, 0, b, -1);
  return std::move(out).build(f);
}

Mat scale(const Field& f, const Scalar& s, const Mat& a) {
  MatBuilder out(a.rows(), a.cols());
  out.add_block(0, 0, a, s);
  return std::move(out).build(f);
}

Mat hstack(const Field& f, const std::vector<Mat>& blocks) {
  if (blocks.empty()) return Mat();
  std::size_t rows = blocks.front().rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error("hstack: row mismatch");
    cols += b.cols();
  }
  MatBuilder out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    out.add_block(0, c0, b);
    c0 += b.cols();
  }
  return std::move(out).build(f);
}

Mat vstack(const Field& f, const std::vector<Mat>& blocks) {
  if (blocks.empty()) return Mat();
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error("vstack: column mismatch");
    rows += b.rows();
  }
  MatBuilder out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    out.add_block(r0, 0, b);
    r0 += b.rows();
  }
  return std::move(out).build(f);
}

Mat direct_sum(const Field& f, const std::vector<Mat>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  MatBuilder out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    out.add_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return std::move(out).build(f);
}

Mat kron(const Field& f, const Mat& a, const Mat& b) {
  MatBuilder out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (const auto& ea : a.row(ra))
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (const auto& eb : b.row(rb))
          out.add(ra * b.rows() + rb, ea.col * b.cols() + eb.col, ea.val * eb.val);
  return std::move(out).build(f);
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Vec add(const Field& f, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.reduce(a[i] + b[i]);
  return out;
}

Vec subtract(const Field& f, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.reduce(a[i] - b[i]);
  return out;
}

Vec scale(const Field& f, const Scalar& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.reduce(s * a[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces and solving

namespace detail {
struct SubspaceAccess {
  static Subspace make(std::size_t ambient, std::vector<Vec> basis, std::vector<std::size_t> pivots) {
    Subspace s(ambient);
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
  }
};
}  // namespace detail

namespace {

template <class Ops>
Subspace rref_subspace(const Ops& ops, std::size_t ambient, std::vector<Row<Ops>> rows) {
  Echelon<Ops> ech(ops, ambient, false);
  for (auto& r : rows) {
    ech.insert(std::move(r));
    if (ech.rank() == ambient) break;
  }
  ech.make_reduced();
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;
  basis.reserve(ech.rank());
  for (const auto& r : ech.rows()) {
    basis.push_back(to_dense(ops, r, ambient));
    pivots.push_back(r.front().first);
  }
  return detail::SubspaceAccess::make(ambient, std::move(basis), std::move(pivots));
}

}  // namespace

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors) {
  return with_ops(f, [&](auto ops) {
    std::vector<Row<decltype(ops)>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw Error("span: vector length mismatch");
      rows.push_back(to_row(ops, v));
    }
    return rref_subspace(ops, ambient, std::move(rows));
  });
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < ambient; ++i) {
    basis.push_back(unit_vec(ambient, i));
    pivots.push_back(i);
  }
  return detail::SubspaceAccess::make(ambient, std::move(basis), std::move(pivots));
}

std::optional<Vec> Subspace::coordinates(const Field& f, const Vec& v) const {
  if (v.size() != ambient_) throw Error("coordinates: vector length mismatch");
  Vec c(basis_.size());
  Vec residual = v;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    c[k] = residual[pivots_[k]];
    if (sgn(c[k]) == 0) continue;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (sgn(basis_[k][i]) != 0) residual[i] = f.reduce(residual[i] - c[k] * basis_[k][i]);
  }
  if (!is_zero(residual)) return std::nullopt;
  return c;
}

bool Subspace::contains(const Field& f, const Vec& v) const { return coordinates(f, v).has_value(); }

bool Subspace::contains(const Field& f, const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(f, v); });
}

Mat Subspace::as_columns(const Field& f) const { return Mat::from_columns(f, ambient_, basis_); }

Subspace sum(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("sum: ambient mismatch");
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(f, a.ambient_dim(), all);
}

Subspace intersection(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("intersection: ambient mismatch");
  // Solve A x = B y; the intersection is spanned by the A x.
  Mat am = a.as_columns(f);
  Mat bm = b.as_columns(f);
  Mat joint = hstack(f, {am, scale(f, -1, bm)});
  if (joint.cols() == 0) return Subspace::zero(a.ambient_dim());
  Subspace ker = kernel_basis(f, joint);
  std::vector<Vec> vecs;
  for (const auto& k : ker.basis()) {
    Vec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    vecs.push_back(am.apply(f, x));
  }
  return Subspace::span(f, a.ambient_dim(), vecs);
}

std::size_t rank(const Field& f, const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter dimension.
  const bool use_transpose = m.rows() < m.cols();
  const Mat& src = m;
  Mat t;
  if (use_transpose) t = m.transpose();
  const Mat& work = use_transpose ? t : src;
  return with_ops(f, [&](auto ops) {
    Echelon<decltype(ops)> ech(ops, work.cols(), false);
    const std::size_t cap = std::min(work.rows(), work.cols());
    for (std::size_t r = 0; r < work.rows() && ech.rank() < cap; ++r) ech.insert(to_row(ops, work.row(r)));
    return ech.rank();
  });
}

Subspace kernel_basis(const Field& f, const Mat& m) {
  const std::size_t n = m.cols();
  return with_ops(f, [&](auto ops) {
    using Ops = decltype(ops);
    Echelon<Ops> ech(ops, n, false);
    for (std::size_t r = 0; r < m.rows() && ech.rank() < n; ++r) ech.insert(to_row(ops, m.row(r)));
    ech.make_reduced();
    std::vector<bool> is_pivot(n, false);
    for (const auto& r : ech.rows()) is_pivot[r.front().first] = true;
    std::vector<std::size_t> free_index(n, n);
    std::vector<Row<Ops>> kernel;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_pivot[c]) continue;
      free_index[c] = kernel.size();
      kernel.push_back({});
    }
    // Column-ordered accumulation: kernel vector for free column c has 1 at
    // c and -R[row][c] at each pivot column.
    std::vector<std::vector<std::pair<std::uint32_t, typename Ops::Elem>>> parts(kernel.size());
    for (const auto& r : ech.rows()) {
      const auto pc = r.front().first;
      for (std::size_t i = 1; i < r.size(); ++i)
        parts[free_index[r[i].first]].emplace_back(pc, ops.neg(r[i].second));
    }
    for (std::size_t c = 0, k = 0; c < n; ++c) {
      if (is_pivot[c]) continue;
      auto& row = parts[k];
      row.emplace_back(static_cast<std::uint32_t>(c), typename Ops::Elem(1));
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      kernel[k] = std::move(row);
      ++k;
    }
    return rref_subspace(ops, n, std::move(kernel));
  });
}

Subspace column_space(const Field& f, const Mat& m) {
  Mat t = m.transpose();
  return with_ops(f, [&](auto ops) {
    std::vector<Row<decltype(ops)>> rows;
    rows.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) rows.push_back(to_row(ops, t.row(r)));
    return rref_subspace(ops, m.rows(), std::move(rows));
  });
}

std::optional<Vec> solve(const Field& f, const Mat& m, const Vec& rhs) { return Solver(f, m).solve(rhs); }

std::size_t quotient_dim(const Field& f, const Subspace& big, const Subspace& small) {
  if (!big.contains(f, small)) throw NotASubspace("quotient_dim: subspace is not contained in the ambient space");
  return big.dim() - small.dim();
}

Solver::Solver(const Field& f, const Mat& m) : field_(f), m_(m) {
  with_ops(f, [&](auto ops) {
    using Ops = decltype(ops);
    Echelon<Ops> ech(ops, m.cols(), true);
    for (std::size_t r = 0; r < m.rows() && ech.rank() < m.cols(); ++r) {
      Row<Ops> tag;
      tag.emplace_back(static_cast<std::uint32_t>(r), typename Ops::Elem(1));
      ech.insert(to_row(ops, m.row(r)), std::move(tag));
    }
    ech.make_reduced();
    for (std::size_t i = 0; i < ech.rank(); ++i) {
      pivot_cols_.push_back(ech.rows()[i].front().first);
      auto tag = ech.tags()[i];
      std::sort(tag.begin(), tag.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      transforms_.push_back(to_sparse(ops, tag));
    }
    return 0;
  });
}

std::optional<Vec> Solver::solve(const Vec& rhs) const {
  if (rhs.size() != m_.rows()) throw Error("solve: rhs length mismatch");
  Vec x(m_.cols());
  for (std::size_t k = 0; k < pivot_cols_.size(); ++k) {
    Scalar acc = 0;
    for (const auto& e : transforms_[k])
      if (sgn(rhs[e.col]) != 0) acc += e.val * rhs[e.col];
    x[pivot_cols_[k]] = field_.reduce(acc);
  }
  if (m_.apply(field_, x) != rhs) {
    // rhs may carry non-canonical representatives; compare after reduction.
    Vec reduced(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) reduced[i] = field_.reduce(rhs[i]);
    if (m_.apply(field_, x) != reduced) return std::nullopt;
  }
  return x;
}

QuotientBasis::QuotientBasis(const Field& f, const Subspace& big, const Subspace& small)
    : field_(f), small_dim_(small.dim()) {
  if (!big.contains(f, small)) throw NotASubspace("quotient: subspace is not contained in the ambient space");
  with_ops(f, [&](auto ops) {
    Echelon<decltype(ops)> ech(ops, big.ambient_dim(), false);
    for (const auto& v : small.basis()) ech.insert(to_row(ops, v));
    for (const auto& v : big.basis())
      if (ech.insert(to_row(ops, v))) reps_.push_back(v);
    return 0;
  });
  std::vector<Vec> cols = reps_;
  cols.insert(cols.end(), small.basis().begin(), small.basis().end());
  solver_.emplace(f, Mat::from_columns(f, big.ambient_dim(), cols));
}

Vec QuotientBasis::coordinates(const Vec& v) const {
  auto x = solver_->solve(v);
  if (!x) throw NotASubspace("quotient coordinates: vector lies outside the ambient subspace");
  x->resize(reps_.size());
  return *x;
}

bool QuotientBasis::is_trivial_class(const Vec& v) const { return is_zero(coordinates(v)); }

}  // namespace hhlab
