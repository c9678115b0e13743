#pragma once

// Truncated Hilbert-Poincare series of Hochschild cohomology and the
// dimension identities for multiplied and projective triangular algebras.

#include <map>
#include <string>
#include <vector>

#include "hhlab/trireduce.hpp"

namespace hhlab {

struct PoincarePoly {
  std::vector<std::size_t> coefficients;  // dim HH^i for the reported degrees
  std::size_t n_max = 0;

  // "1 + 8t", "2", "1 + 3t + 2t^2"; "0" when every coefficient vanishes.
  std::string to_string() const;
  bool operator==(const PoincarePoly&) const = default;
};

PoincarePoly poincare_poly(const Algebra& t, std::size_t n_max);

struct SeriesComparison {
  std::vector<std::size_t> lhs, rhs;
  std::vector<bool> holds;
  bool all_hold() const;
};

// chi of [A M^mult; 0 B] against chi of [A M; 0 B] + t (mult^2 - 1) Xi,
// Xi the Ext series of M. Both sides are computed from scratch.
SeriesComparison kronecker_series_check(const BimodulePtr& m, std::size_t mult, std::size_t n_max);

struct ModpReport {
  std::uint32_t p = 0;
  // m^2 mod p -> multiplicities in that class.
  std::map<std::size_t, std::vector<std::size_t>> classes;
  std::vector<std::string> failures;
  bool holds() const { return failures.empty(); }
};

// Coefficients reduced mod p agree whenever m^2 = m'^2 mod p.
ModpReport modp_periodicity_check(const std::map<std::size_t, PoincarePoly>& chi, std::uint32_t p);

struct ProjectiveSplitReport {
  SplitReport split;                         // lhs HH T, mid HH A, rhs HH B
  std::vector<std::size_t> ext_dims;         // Ext(M, M) over A (x) B^o
  std::vector<bool> end_identity;            // dim HH^n B = dim Ext^n(M, M)
  std::size_t end_dim = 0;                   // dim B
  bool all_hold() const;
};

// A section of the free cover A^{dim M} -> M, or NotProjective.
Mat projective_section(const Bimodule& m);

// For a projective left A-module M (as an (A, K)-bimodule), B = (End_A M)^o
// and T = [A M^mult; 0 B]:
// dim HH^n T = dim HH^n A + (mult^2 - 1) dim HH^{n-1} B.
ProjectiveSplitReport projective_split_check(const AlgebraPtr& a, const BimodulePtr& m, std::size_t mult,
                                             std::size_t n_max);

}  // namespace hhlab
