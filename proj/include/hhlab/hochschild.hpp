#pragma once

// Hochschild cochain complexes and their cohomology.
//
// Truncation: a complex built with n_max has degrees 0 .. n_max-1. The top
// degree has no outgoing differential, so cohomology is reported for
// degrees 0 .. n_max-2 only.

#include <string>
#include <vector>

#include "hhlab/algcore.hpp"

namespace hhlab {

// Largest dense size (rows * cols) allowed for one differential.
std::size_t dense_budget();
void set_dense_budget(std::size_t entries);
// Throws DegreeTooLarge when rows * cols exceeds the budget.
void check_budget(std::size_t rows, std::size_t cols, const std::string& what);

struct CochainComplex {
  Field field;
  std::vector<std::size_t> dims;  // degrees 0 .. top
  std::vector<Mat> d;             // d[n] : C^n -> C^{n+1}, n < top
  std::vector<std::string> labels;

  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  // Degrees with an outgoing differential, i.e. reportable cohomology.
  std::size_t reported() const { return d.size(); }
  // d^{n+1} d^n = 0 for all n.
  bool squares_to_zero() const;
};

struct CohomologyResult {
  std::vector<std::size_t> dims;
  // Z^n / B^n with chosen representatives; filled when requested.
  std::vector<QuotientBasis> classes;
  std::vector<Subspace> cocycles;
  std::vector<Subspace> coboundaries;

  const std::vector<Vec>& representatives(std::size_t n) const { return classes.at(n).representatives(); }
};

CohomologyResult cohomology(const CochainComplex& c, bool with_representatives = true);

// Normalised (T-bar = T / K 1) or plain bar cochain complex C*(T, coeff),
// coeff a T-bimodule. C^n = Hom_K(T-bar^{(x) n}, coeff), coordinate
// tuple_index * dim coeff + coeff_index with the tuple read as base-(dim T-bar)
// digits, first argument most significant.
CochainComplex bar_cochain_complex(const Algebra& t, const Bimodule& coeff, std::size_t n_max, bool normalized = true);

// Basis of T-bar: indices of T's basis other than the pivot. The pivot is the
// first coordinate where the unit is nonzero.
std::vector<std::size_t> reduced_basis(const Algebra& t);
// Class of v in T / K 1, in the coordinates of reduced_basis(t).
SparseVec reduce_mod_unit(const Algebra& t, const Vec& v);

std::vector<std::size_t> hh_dims(const Algebra& t, std::size_t n_max);
std::vector<std::size_t> ext_dims(const Bimodule& m, const Bimodule& n, std::size_t n_max);
CochainComplex ext_complex(const Bimodule& m, const Bimodule& n, std::size_t n_max);

// Integer power with overflow guard against the budget.
std::size_t checked_pow(std::size_t base, std::size_t exp);

}  // namespace hhlab
