#pragma once

// JSON workspaces: named algebras, bimodules and families.
//
// {
//   "field": "Q",
//   "algebras": {
//     "K":  {"basis": ["1"], "mult": [[0, 0, 0, "1"]], "unit": ["1"]},
//     "K2": {"triangular": ["K", "K", "K^2"]},
//     "KxK": {"product": ["K", "K"]}
//   },
//   "bimodules": {
//     "K^2": {"over": ["K", "K"], "basis": ["e1", "e2"],
//             "left": [[0, 0, 0, "1"], [0, 1, 1, "1"]],
//             "right": [[0, 0, 0, "1"], [0, 1, 1, "1"]]},
//     "R": {"regular": "Dual"},
//     "F": {"free": ["A2", "K"]}
//   },
//   "families": {"KK": {"members": ["K^1", "K^1"], "multiplicities": [1, 1]}}
// }
//
// mult triples [i, j, k, c] mean b_i b_j has coefficient c on b_k. Action
// triples [a, m, m', c] mean a_a . e_m (or e_m . b_a) has coefficient c on
// e_m'. Scalars are strings ("-3", "1/2", "0.25") or integers.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "hhlab/corpus.hpp"

namespace hhlab {

struct Workspace {
  Field field;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, BimodulePtr> bimodules;
  std::map<std::string, Family> families;

  // Lookups throw ReferenceError naming the missing entry.
  const AlgebraPtr& algebra(const std::string& name) const;
  const BimodulePtr& bimodule(const std::string& name) const;
  const Family& family(const std::string& name) const;
};

// `field` overrides the field recorded in the document.
Workspace parse_workspace(const std::string& text, const std::optional<Field>& field = std::nullopt);
Workspace load_workspace(const std::string& path, const std::optional<Field>& field = std::nullopt);
nlohmann::json workspace_to_json(const Workspace& w);

// The bundled corpus: K, K1..K4, A2, A3, Dual, KxK, OnePoint; bimodules
// K^1..K^4, P1, S2, Dual-reg, A2-free; families KK and KK-2-2.
Workspace builtin_workspace(const Field& f);

}  // namespace hhlab
