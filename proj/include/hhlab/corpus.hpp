#pragma once

// Built-in example algebras, bimodules and families.

#include <string>
#include <vector>

#include "hhlab/algcore.hpp"

namespace hhlab {

// Kronecker algebra K_m = [K K^m; 0 K].
AlgebraPtr kronecker(const Field& f, std::size_t m);
// Path algebra of the linearly oriented quiver with n vertices, i.e. the
// upper triangular n x n matrices; basis E_ij (i <= j) in row-major order.
AlgebraPtr upper_triangular(const Field& f, std::size_t n);
// K[e] / (e^2).
AlgebraPtr dual_numbers(const Field& f);

struct Family {
  std::vector<BimodulePtr> members;
  std::vector<std::size_t> multiplicities;
  // Base algebras, needed when the family is empty.
  AlgebraPtr base_a;
  AlgebraPtr base_b;

  AlgebraPtr a() const;
  AlgebraPtr b() const;
  // The bimodule sum of members with multiplicity.
  BimodulePtr total() const;
  // The bimodule sum of members, each once.
  BimodulePtr reduced_total() const;
};

// Named entries of the bundled corpus.
struct CorpusEntry {
  std::string name;
  AlgebraPtr algebra;
};
std::vector<CorpusEntry> corpus_algebras(const Field& f);

}  // namespace hhlab
