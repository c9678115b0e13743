#pragma once

// Finite-dimensional algebras and bimodules given by structure constants.
//
// Conventions used throughout the library:
//  * b_i b_j = sum_k c_ijk b_k, stored as one sparse vector per (i, j).
//  * A bimodule over (A, B) stores one matrix per basis element for each
//    side: left_matrix(i) is m -> a_i m, right_matrix(j) is m -> m b_j,
//    both acting on column vectors.
//  * Hom_K(M, N) is vectorised column-major: coordinate m * dim N + n holds
//    the n-th coordinate of f(e_m).  So vec(X F Y) = (Y^T kron X) vec(F).
//  * Triangular algebras [A M; 0 B] use the block basis order (A | M | B).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hhlab/exactla.hpp"

namespace hhlab {

class Algebra;
class Bimodule;
using AlgebraPtr = std::shared_ptr<const Algebra>;
using BimodulePtr = std::shared_ptr<const Bimodule>;

struct MultTerm {
  std::size_t i, j, k;
  Scalar c;
};

// Block layout of a triangular algebra built by triangular_algebra().
struct TriangularLayout {
  AlgebraPtr a;
  AlgebraPtr b;
  BimodulePtr m;
  std::size_t a_offset() const { return 0; }
  std::size_t m_offset() const;
  std::size_t b_offset() const;
};

class Algebra {
 public:
  Algebra(Field f, std::vector<std::string> labels, const std::vector<MultTerm>& mult, Vec unit);

  const Field& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& unit() const { return unit_; }

  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  std::vector<MultTerm> mult_terms() const;
  Vec multiply(const Vec& x, const Vec& y) const;
  // y -> x y and y -> y x.
  Mat left_mult(const Vec& x) const;
  Mat right_mult(const Vec& x) const;
  Mat left_mult_basis(std::size_t i) const { return left_basis_[i]; }
  Mat right_mult_basis(std::size_t i) const { return right_basis_[i]; }

  const std::optional<TriangularLayout>& triangular() const { return layout_; }
  void set_triangular(TriangularLayout layout) { layout_ = std::move(layout); }

  // Same field, basis size, structure constants and unit.
  bool same_structure(const Algebra& other) const;

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
  Vec unit_;
  std::vector<Mat> left_basis_;
  std::vector<Mat> right_basis_;
  std::optional<TriangularLayout> layout_;
};

struct ActionTerm {
  std::size_t alg, m, m_out;
  Scalar c;
};

class Bimodule {
 public:
  Bimodule(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels, std::vector<Mat> left_action,
           std::vector<Mat> right_action);
  // left terms (a, m, m', c): a_a . e_m has coefficient c on e_m'; right terms
  // (b, m, m', c): e_m . b_b has coefficient c on e_m'.
  static Bimodule from_terms(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels,
                             const std::vector<ActionTerm>& left_terms, const std::vector<ActionTerm>& right_terms);

  const Field& field() const { return left_alg_->field(); }
  const Algebra& left() const { return *left_alg_; }
  const Algebra& right() const { return *right_alg_; }
  const AlgebraPtr& left_ptr() const { return left_alg_; }
  const AlgebraPtr& right_ptr() const { return right_alg_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  // alpha(a_i) and beta(b_j) as K-endomorphisms of M.
  const Mat& left_matrix(std::size_t i) const { return left_act_[i]; }
  const Mat& right_matrix(std::size_t j) const { return right_act_[j]; }
  Mat left_of(const Vec& a) const;
  Mat right_of(const Vec& b) const;
  Vec act_left(const Vec& a, const Vec& m) const;
  Vec act_right(const Vec& m, const Vec& b) const;

  std::vector<ActionTerm> left_terms() const;
  std::vector<ActionTerm> right_terms() const;

 private:
  AlgebraPtr left_alg_;
  AlgebraPtr right_alg_;
  std::vector<std::string> labels_;
  std::vector<Mat> left_act_;
  std::vector<Mat> right_act_;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

ValidationReport validate_algebra(const Algebra& a);
ValidationReport validate_bimodule(const Bimodule& m);
// Throwing variants for loaders.
AlgebraPtr make_algebra(Field f, std::vector<std::string> labels, const std::vector<MultTerm>& mult, Vec unit);
BimodulePtr make_bimodule(Bimodule m);

bool same_algebra(const Algebra& a, const Algebra& b);
// Throws IncompatibleBimodule unless both are over the same pair of algebras.
void require_same_base(const Bimodule& m, const Bimodule& n);

AlgebraPtr ground_algebra(const Field& f);
AlgebraPtr opposite(const Algebra& a);
// Basis b_i (x) c_j at index i * dim c + j.
AlgebraPtr tensor_algebra(const Algebra& a, const Algebra& b);
AlgebraPtr triangular_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const BimodulePtr& m);
// Direct product A x B with basis (A | B).
AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
// n x n matrices, basis E_ij at index i * n + j.
AlgebraPtr matrix_algebra(const Field& f, std::size_t n);

// T as a bimodule over itself.
BimodulePtr regular_bimodule(const AlgebraPtr& t);
// A (x) B with a (x (x) y) b = a x (x) y b.
BimodulePtr free_bimodule(const AlgebraPtr& a, const AlgebraPtr& b);
BimodulePtr zero_bimodule(const AlgebraPtr& a, const AlgebraPtr& b);
BimodulePtr direct_sum(const std::vector<BimodulePtr>& parts);
BimodulePtr power(const BimodulePtr& m, std::size_t k);
// K^k over A = B = K.
BimodulePtr trivial_bimodule(const AlgebraPtr& ground, std::size_t k);

// Hom_K(M, N) as a bimodule over Lambda = A (x) B^o:
// ((a (x) b) f (a' (x) b'))(x) = a f(a' x b') b.
BimodulePtr hom_coefficient_bimodule(const Bimodule& m, const Bimodule& n);
// Lambda = A (x) B^o.
AlgebraPtr enveloping_algebra(const Algebra& a, const Algebra& b);

enum class HomSide { OverA, OverB, OverBoth };

// Subspace of Hom_K(M, N) of maps commuting with the given actions.
Subspace hom_space(const Bimodule& m, const Bimodule& n, HomSide side);

// A subspace of Hom_K(M, N) carrying an induced bimodule structure. The
// module's basis is space.basis() in order.
struct HomBimodule {
  Subspace space;
  BimodulePtr module;
};
// Hom_{B^o}(M, N) as an A-bimodule, (a h a')(x) = a h(a' x).
HomBimodule hom_over_b(const Bimodule& m, const Bimodule& n);
// Hom_A(M, N) as a B-bimodule, (b h b')(x) = h(x b) b'.
HomBimodule hom_over_a(const Bimodule& m, const Bimodule& n);

Mat vec_to_mat(const Vec& v, std::size_t dim_m, std::size_t dim_n);
Vec mat_to_vec(const Mat& f);

Subspace center(const Algebra& a);

struct EndAlgebra {
  AlgebraPtr algebra;
  // Basis endomorphisms as dim M x dim M matrices.
  std::vector<Mat> basis;
};
// Endomorphisms commuting with the chosen actions; product is composition
// (or reversed composition when opposite is set).
EndAlgebra end_algebra(const Bimodule& m, HomSide side, bool opposite = false);

// For an (A, K)-bimodule M: the (A, B) bimodule M with B = (End_A M)^o,
// m . phi = phi(m).
BimodulePtr over_endomorphisms(const Bimodule& m);

// Checks that alpha and beta are unital algebra morphisms.
bool actions_are_morphisms(const Bimodule& m);

}  // namespace hhlab
