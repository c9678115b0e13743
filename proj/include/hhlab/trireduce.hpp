#pragma once

// Triangular reduction machinery: the relative bar complex, the triangular
// cochain complex C_tri(M, N), cones over families of bimodules, and long
// exact sequences computed from short exact sequences of cochain complexes.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hhlab/corpus.hpp"
#include "hhlab/hochschild.hpp"

namespace hhlab {

// ---------------------------------------------------------------------------
// Chain-level relative bar complex (plain, not normalised). Used as an
// independent oracle for C_tri.

struct RelativeBar {
  Field field;
  std::vector<std::size_t> dims;                // degrees 0 .. top
  std::vector<Mat> boundary;                    // boundary[k] : C_{k+1} -> C_k
  std::vector<std::vector<Mat>> left_action;    // per degree, one matrix per basis element of A
  std::vector<std::vector<Mat>> right_action;   // per degree, one matrix per basis element of B
};

RelativeBar relative_bar(const Bimodule& m, std::size_t n_max);
// Hom_{A (x) B^o}(relative_bar(M), N) computed by solving the intertwining
// equations degree by degree.
CochainComplex hom_from_relative_bar(const RelativeBar& bar, const Bimodule& n);

// ---------------------------------------------------------------------------
// Triangular cochain complex

struct BlockSpan {
  std::string name;
  std::size_t offset;
  std::size_t size;
};

struct TriangularCochainComplex {
  CochainComplex complex;
  HomBimodule hom_a;  // Hom_{B^o}(M, N) as an A-bimodule
  HomBimodule hom_b;  // Hom_A(M, N) as a B-bimodule
  CochainComplex c_a; // C*(A, Hom_{B^o}(M, N))
  CochainComplex c_b; // C*(B, Hom_A(M, N))
  // Per degree: the A-piece, the mixed pieces and the B-piece.
  std::vector<std::vector<BlockSpan>> blocks;
  // i^A and i^B, per degree.
  std::vector<Mat> to_a;
  std::vector<Mat> to_b;
};

TriangularCochainComplex triangular_cochain(const Bimodule& m, const Bimodule& n, std::size_t n_max);
// The subcomplex Ker i* (the mixed pieces).
CochainComplex kernel_of_restriction(const TriangularCochainComplex& t);

// ---------------------------------------------------------------------------
// Generic complex utilities

using ChainMap = std::vector<Mat>;  // one matrix per degree

bool is_chain_map(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f);
// Mapping cone: degree n is src^n + dst^{n-1}, d(x, y) = (d x, f x - d y).
CochainComplex mapping_cone(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f);
// D[-1]: degree n is D^{n-1}, differential -d.
CochainComplex shift_down(const CochainComplex& c);
CochainComplex direct_sum(const std::vector<CochainComplex>& parts);

// ---------------------------------------------------------------------------
// Family cones

// A cochain complex assembled from named blocks; names identify the same
// piece across different complexes built from one context.
struct BlockComplex {
  CochainComplex complex;
  std::vector<std::vector<BlockSpan>> blocks;  // per degree
  std::vector<std::size_t> members;            // indices into the context's member list
};

// Mapping cone as a (source, target, lambda) triple.
struct ConeComplex {
  CochainComplex source;
  CochainComplex target;
  ChainMap lambda;
  CochainComplex cone;
};

// Builds and caches the pieces for one pair (A, B) and one list of members.
class TriangularContext {
 public:
  TriangularContext(AlgebraPtr a, AlgebraPtr b, std::vector<BimodulePtr> members, std::size_t n_max);

  const AlgebraPtr& a() const { return a_; }
  const AlgebraPtr& b() const { return b_; }
  const std::vector<BimodulePtr>& members() const { return members_; }
  std::size_t n_max() const { return n_max_; }
  const Field& field() const { return a_->field(); }

  // Cone over the chosen members using the given ordered pairs of member
  // indices. With only diagonal pairs this is C*E; with all pairs it
  // computes HH of the triangular algebra of the direct sum.
  BlockComplex cone(const std::vector<std::size_t>& ids, const std::set<std::pair<std::size_t, std::size_t>>& pairs);
  BlockComplex family_cone(const std::vector<std::size_t>& ids);  // diagonal pairs
  BlockComplex full_cone(const std::vector<std::size_t>& ids);    // all pairs
  ConeComplex cone_parts(const std::vector<std::size_t>& ids, const std::set<std::pair<std::size_t, std::size_t>>& pairs);

  const CochainComplex& hochschild_a();
  const CochainComplex& hochschild_b();
  const TriangularCochainComplex& tri(std::size_t i, std::size_t j);

 private:
  AlgebraPtr a_;
  AlgebraPtr b_;
  std::vector<BimodulePtr> members_;
  std::size_t n_max_;
  std::optional<CochainComplex> ca_;
  std::optional<CochainComplex> cb_;
  std::map<std::pair<std::size_t, std::size_t>, TriangularCochainComplex> tri_;
};

// Coordinate projection onto the blocks of `to` (all must exist in `from`).
ChainMap block_projection(const BlockComplex& from, const BlockComplex& to);
// Coordinate inclusion of `from` into `to` (a linear section, not a chain map).
ChainMap block_section(const BlockComplex& from, const BlockComplex& to);
// Subcomplex spanned by the blocks of `c` not present in `quotient`.
BlockComplex block_kernel(const BlockComplex& c, const BlockComplex& quotient);

// ---------------------------------------------------------------------------
// Long exact sequences

enum class SequenceKind {
  Happel,
  DirectSumRestriction,
  SubfamilyRestriction,
  MayerVietoris,
  CoverMayerVietoris,
  PartitionMayerVietoris,
  ConeTriangle,
  MultiplicitySplit,
  DeltaFiveTerm,
};
std::string to_string(SequenceKind k);

struct SequenceNode {
  std::string label;
  std::size_t degree;
  std::size_t dim;
};

struct SequenceReport {
  SequenceKind kind;
  std::vector<SequenceNode> nodes;
  std::vector<Mat> maps;                    // maps[i] : nodes[i] -> nodes[i+1]
  std::vector<std::optional<bool>> exact_at;  // nullopt where truncation hides a neighbour
  bool short_exact_at_cochain_level = true;

  bool all_verified_exact() const;
  std::size_t verified_count() const;
};

struct ShortExactSequence {
  CochainComplex sub, mid, quot;
  ChainMap incl, proj;
  std::string sub_label, mid_label, quot_label;
};

// Verifies the sequence at cochain level, then computes the long exact
// sequence with induced maps and snake connecting maps, and checks
// exactness at every node whose neighbours are below the truncation.
SequenceReport les_report(const ShortExactSequence& ses, SequenceKind kind);
// Triangle target[-1] -> cone -> source.
SequenceReport cone_les_report(const ConeComplex& c);

// Alternating dimension sum over nodes [first, last].
long alternating_sum(const SequenceReport& r, std::size_t first, std::size_t last);

// ---------------------------------------------------------------------------
// Named sequences. Families are given by member indices of a context.

ConeComplex lambda_cone(const Family& e, std::size_t n_max);
CohomologyResult modified_cohomology(const Family& e, std::size_t n_max);

// 0 -> Sigma_M -> C{M} -> C*(A) x C*(B) -> 0.
SequenceReport happel_report(const BimodulePtr& m, std::size_t n_max);
// Restriction from M (+) N to N: kernel pieces (M,M), (M,N), (N,M).
SequenceReport direct_sum_restriction_report(const BimodulePtr& m, const BimodulePtr& n, std::size_t n_max);
// 0 -> prod_{L in E \ F} Sigma_L -> C*E -> C*F -> 0.
SequenceReport subfamily_report(TriangularContext& ctx, const std::vector<std::size_t>& e,
                                const std::vector<std::size_t>& f);
// Cover {U_0, ..., U_u} of E with U_i n U_j inside U_0 for i != j.
SequenceReport cover_report(TriangularContext& ctx, const std::vector<std::size_t>& e,
                            const std::vector<std::vector<std::size_t>>& cover,
                            SequenceKind kind = SequenceKind::CoverMayerVietoris);

struct MapIdentityReport {
  bool functoriality = true;      // rho_{G,F} rho_{F,E} = rho_{G,E}
  bool section_functoriality = true;  // sigma_{E,F} sigma_{F,G} = sigma_{E,G}
  bool section_identity = true;   // rho_{F,E} sigma_{E,G} = sigma_{F,FnG} rho_{FnG,G}
  bool projections_are_chain_maps = true;
  std::size_t checked = 0;
};
// Checks the identities on all subfamilies of e (all nested triples and all
// pairs F, G).
MapIdentityReport map_identities(TriangularContext& ctx, const std::vector<std::size_t>& e);

// ---------------------------------------------------------------------------
// Splittings and dimension identities

struct SplitReport {
  std::vector<std::size_t> lhs_dims, mid_dims, rhs_dims;
  std::vector<bool> identity_holds;
  bool section_found = false;
  bool all_hold() const;
};

// HH(T_M) against HH(T_M') plus the Ext correction for multiplicities.
SplitReport multiplicity_split_check(const Family& e, std::size_t n_max);

struct ExchangeReport {
  std::vector<std::size_t> lhs, rhs;  // per degree
  std::vector<bool> holds;
  bool all_hold() const;
};
// Throws HypothesisUnverifiable when a direct-factor witness cannot be found.
ExchangeReport exchange_check(const BimodulePtr& m, const BimodulePtr& n, std::size_t witness_m,
                              std::size_t witness_n, std::size_t n_max);
// Searches for a split injection M -> X of bimodules.
bool is_direct_factor(const Bimodule& m, const Bimodule& x);

struct DecompositionReport {
  std::vector<std::size_t> full_dims, family_dims, off_diagonal_dims;  // cochain dims per degree
  bool dims_add_up = true;
  bool off_diagonal_is_direct_summand = true;
  std::vector<std::size_t> hh_dims, modified_dims, ext_correction;     // cohomology
  bool dimension_identity = true;
};
// Splitting of the all-pairs cone into C*E plus the off-diagonal Sigma blocks,
// and the resulting identity dim HH^n(T_E) = dim H^n E + sum Ext^{n-1}.
DecompositionReport family_decomposition(const Family& e, std::size_t n_max);

}  // namespace hhlab
