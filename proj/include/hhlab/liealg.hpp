#pragma once

// Derivations, inner derivations and the Lie algebra HH^1 = Der / Int.
//
// A K-linear map D : T -> T is stored as a dim T x dim T matrix acting on
// column vectors, D(t_j) = column j. As a vector it is column-major,
// matching mat_to_vec.

#include <optional>
#include <string>
#include <vector>

#include "hhlab/trireduce.hpp"

namespace hhlab {

struct DerivationSpace {
  AlgebraPtr algebra;
  Subspace der;       // Der(T) in vec(End_K T)
  Subspace inner;     // Int(T)
  // Triangular algebras only (otherwise equal to der / inner): the gauge
  // m0 = 0, i.e. Der' and Int' realised as subspaces of Der.
  Subspace der_prime;
  Subspace int_prime;
  std::vector<Mat> der_basis, int_basis, hh1_basis;
  QuotientBasis hh1;  // der_prime / int_prime
  // bracket[i][j] = coordinates of [h_i, h_j] in hh1_basis.
  std::vector<std::vector<Vec>> bracket;

  std::size_t hh1_dim() const { return hh1_basis.size(); }
  // Class of a derivation in hh1 coordinates.
  Vec classify(const Mat& d) const;
};

DerivationSpace derivation_space(const AlgebraPtr& t);
bool is_derivation(const Algebra& t, const Mat& d);
// x -> t0 x - x t0.
Mat inner_derivation(const Algebra& t, const Vec& t0);
Mat commutator(const Field& f, const Mat& x, const Mat& y);

// The corners of a triangular algebra, rebuilt from its multiplication table.
struct TriangularParts {
  AlgebraPtr a;
  AlgebraPtr b;
  BimodulePtr m;
};
TriangularParts triangular_parts(const Algebra& t);

// D [a m; 0 b] = [alpha(a), mu(m) - a m0 + m0 b; 0, beta(b)].
struct TriangularDerivation {
  Mat alpha;
  Mat beta;
  Mat mu;
  Vec m0;
};
TriangularDerivation decompose_derivation(const Algebra& t, const Mat& d);
Mat recompose_derivation(const Algebra& t, const TriangularDerivation& d);
// Compares the block formula for [D0, D1] with the matrix commutator.
bool bracket_check(const Algebra& t, const TriangularDerivation& d0, const TriangularDerivation& d1);

struct LieChecks {
  std::size_t der_dim = 0, int_dim = 0, hh1_dim = 0, cochain_hh1 = 0;
  bool hh1_matches_cochain = true;
  bool jacobi = true;
  bool int_is_ideal = true;
  bool bracket_closes = true;
  // Triangular algebras only.
  std::optional<bool> block_pattern;
  std::optional<bool> roundtrip;
  std::optional<bool> bracket_formula;
  std::optional<bool> inner_dimension;
  // Same count with ZA x ZB in place of A x B; reported, not required.
  std::optional<bool> center_only_formula;
  bool all_hold() const;
};
LieChecks lie_checks(const AlgebraPtr& t);

// ---------------------------------------------------------------------------
// Two bimodules M, N over the same (A, B) and T = [A M+N; 0 B].

struct SubalgebraDecomposition {
  std::size_t der_prime = 0;
  std::size_t diagonal = 0;       // D'{M,N}
  std::size_t upper = 0;          // D°(M,N)
  std::size_t lower = 0;          // D°(N,M)
  std::size_t hom_mn = 0, hom_nm = 0;
  std::size_t hh1 = 0, h_diagonal = 0, h_upper = 0, h_lower = 0;
  bool direct_sum = true;
  bool hom_dims_match = true;
  bool int_inside_diagonal = true;
  bool sum_identity = true;
  bool intersection_identity = true;
  bool subalgebras_closed = true;
  bool ideals_abelian = true;
  bool restrictions_are_lie_morphisms = true;
  bool same_image = true;
  bool all_hold() const;
};
SubalgebraDecomposition lie_subalgebra_decomposition(const BimodulePtr& m, const BimodulePtr& n);

struct DeltaWitness {
  Mat alpha, beta, mu;
};

struct DeltaReport {
  bool member = false;
  // r^1 : HH^1[A M+N; 0 B] -> HH^1[A M; 0 B] computed directly.
  bool restriction_surjective = false;
  std::optional<DeltaWitness> obstruction_witness;
  std::optional<SequenceReport> sequence;
  // Membership and surjectivity agree.
  bool criterion_consistent() const { return member == restriction_surjective; }
};
DeltaReport delta_report(const BimodulePtr& m, const BimodulePtr& n, std::size_t n_max);

struct DeltaClosureReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Sums of members are members, factors of members are members, and
// M^k is a member for k = 1..3.
DeltaClosureReport delta_closure_checks(const BimodulePtr& m, const std::vector<BimodulePtr>& witnesses);

// r^1 between HH^1 of triangular algebras obtained by dropping summands.
// keep lists the basis indices of the big algebra kept by the small one.
Mat restriction_map(const DerivationSpace& big, const DerivationSpace& small, const std::vector<std::size_t>& keep);

// Searches for basis classes h, h' with r^1[h, h'] != [r^1 h, r^1 h'] for
// r^1 : HH^1[A M+N; 0 B] -> HH^1[A M; 0 B].
struct MorphismSearch {
  std::size_t pairs_checked = 0;
  bool counterexample_found = false;
  std::string description;
};
MorphismSearch restriction_morphism_search(const BimodulePtr& m, const BimodulePtr& n);

// The square of restrictions from M+M'+M'' down to M commutes.
bool transitivity_check(const BimodulePtr& m, const BimodulePtr& m1, const BimodulePtr& m2);

}  // namespace hhlab
