#pragma once

// Exact linear algebra over Q and F_p.
//
// Scalars are GMP rationals everywhere in the public API. Over F_p every
// stored scalar is the canonical integer representative in [0, p); the
// elimination kernels switch to machine words internally.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hhlab/errors.hpp"

namespace hhlab {

namespace detail {
struct SubspaceAccess;
}

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  // Accepts "Q" or "Fp:P".
  static Field parse(std::string_view text);

  Kind kind() const { return p_ == 0 ? Kind::Rationals : Kind::PrimeField; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  Scalar reduce(const Scalar& x) const;
  Scalar inverse(const Scalar& x) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return reduce(a * inverse(b)); }
  Scalar parse_scalar(std::string_view text) const;
  std::string format(const Scalar& x) const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

struct Entry {
  std::uint32_t col;
  Scalar val;
};
using SparseVec = std::vector<Entry>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar val;
};

// Row-compressed sparse matrix with no stored zeros. Entries are kept in the
// canonical representative of whichever field built the matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static Mat identity(std::size_t n);
  static Mat from_triplets(const Field& f, std::size_t rows, std::size_t cols,
                           std::vector<Triplet> entries);
  static Mat from_dense(const Field& f, const std::vector<Vec>& rows, std::size_t cols);
  // Columns given as dense vectors of length `rows`.
  static Mat from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  const SparseVec& row(std::size_t r) const { return data_[r]; }
  Scalar at(std::size_t r, std::size_t c) const;
  std::vector<Triplet> triplets() const;
  std::vector<Vec> dense() const;

  Mat transpose() const;
  Vec apply(const Field& f, const Vec& x) const;
  Vec column(std::size_t c) const;

  bool operator==(const Mat& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;

  friend class MatBuilder;
};

// Accumulates (row, col, value) contributions, summing duplicates.
class MatBuilder {
 public:
  MatBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  void add(std::size_t row, std::size_t col, const Scalar& val);
  void add_block(std::size_t row0, std::size_t col0, const Mat& block, const Scalar& scale = 1);
  Mat build(const Field& f) &&;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> entries_;
};

Mat multiply(const Field& f, const Mat& a, const Mat& b);
Mat add(const Field& f, const Mat& a, const Mat& b);
Mat subtract(const Field& f, const Mat& a, const Mat& b);
Mat scale(const Field& f, const Scalar& s, const Mat& a);
// Block matrices.
Mat hstack(const Field& f, const std::vector<Mat>& blocks);
Mat vstack(const Field& f, const std::vector<Mat>& blocks);
Mat direct_sum(const Field& f, const std::vector<Mat>& blocks);
// Kronecker product a ⊗ b.
Mat kron(const Field& f, const Mat& a, const Mat& b);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec add(const Field& f, const Vec& a, const Vec& b);
Vec subtract(const Field& f, const Vec& a, const Vec& b);
Vec scale(const Field& f, const Scalar& s, const Vec& a);

// A subspace of K^n stored by its reduced row echelon basis, which is
// unique, so two equal subspaces always compare equal coordinate-wise.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace whole(std::size_t ambient);
  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Field& f, const Vec& v) const;
  bool contains(const Field& f, const Subspace& other) const;
  // Coordinates with respect to basis(), or nullopt if v is not in the span.
  std::optional<Vec> coordinates(const Field& f, const Vec& v) const;
  // Basis vectors as the columns of an ambient x dim matrix.
  Mat as_columns(const Field& f) const;

  bool operator==(const Subspace& other) const = default;

 private:
  friend struct detail::SubspaceAccess;
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Field& f, const Subspace& a, const Subspace& b);
Subspace intersection(const Field& f, const Subspace& a, const Subspace& b);

std::size_t rank(const Field& f, const Mat& m);
Subspace kernel_basis(const Field& f, const Mat& m);
Subspace column_space(const Field& f, const Mat& m);
// The solution whose free variables (non-pivot columns of the RREF) are zero.
std::optional<Vec> solve(const Field& f, const Mat& m, const Vec& rhs);
// dim big - dim small; throws NotASubspace unless small ⊆ big.
std::size_t quotient_dim(const Field& f, const Subspace& big, const Subspace& small);

// Factor a matrix once and solve many right-hand sides against it.
class Solver {
 public:
  Solver(const Field& f, const Mat& m);
  std::optional<Vec> solve(const Vec& rhs) const;
  std::size_t rank() const { return pivot_cols_.size(); }

 private:
  Field field_;
  Mat m_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<SparseVec> transforms_;  // row combinations producing each pivot row
};

// Representatives for big/small, chosen by extending the echelon form of
// `small` with basis vectors of `big` in order.
class QuotientBasis {
 public:
  QuotientBasis() = default;
  QuotientBasis(const Field& f, const Subspace& big, const Subspace& small);

  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vec>& representatives() const { return reps_; }
  // Coordinates of the class of v; throws NotASubspace if v is not in big.
  Vec coordinates(const Vec& v) const;
  bool is_trivial_class(const Vec& v) const;

 private:
  Field field_;
  std::size_t small_dim_ = 0;
  std::vector<Vec> reps_;
  std::optional<Solver> solver_;
};

}  // namespace hhlab
