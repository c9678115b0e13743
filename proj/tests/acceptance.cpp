// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hhlab/cli.hpp"
#include "hhlab/liealg.hpp"
#include "hhlab/series.hpp"
#include "hhlab/workspace.hpp"

using namespace hhlab;

namespace {

const std::string kData = HHLAB_DATA_DIR;

// Collects failed sub-checks so a FAIL line can say what broke.
struct Ledger {
  std::vector<std::string> failed;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failed.push_back(what);
  }
};

std::string cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "hhlab");
  std::ostringstream out, err;
  code = run(args, out, err);
  return out.str();
}

Workspace corpus(const Field& f) { return load_workspace(kData + "/corpus.json", f); }

void kronecker_dims(Ledger& l) {
  for (const char* field : {"Q", "Fp:2"})
    for (std::size_t m = 1; m <= 4; ++m) {
      int code = 0;
      auto out = cli({"hh", "--input", kData + "/kronecker.json", "--field", field, "--algebra",
                      "K" + std::to_string(m), "--max-degree", "4", "--out", "json"},
                     code);
      auto dims = nlohmann::json::parse(out)["dims"].get<std::vector<std::size_t>>();
      l.expect(code == 0 && dims == std::vector<std::size_t>{1, m * m - 1, 0},
               "K" + std::to_string(m) + " over " + field);
    }
}

void happel(Ledger& l) {
  auto w = corpus(Field::rationals());
  auto r = happel_report(w.bimodule("K^2"), 5);
  l.expect(r.short_exact_at_cochain_level, "short exact at cochain level");
  std::vector<std::size_t> dims;
  for (const auto& n : r.nodes) dims.push_back(n.dim);
  // 0 -> HH^0 T -> HH^0 A x HH^0 B -> Ext^0(M,M) -> HH^1 T -> ...
  l.expect(dims.size() >= 5 && std::vector<std::size_t>(dims.begin() + 1, dims.begin() + 5) ==
                                   std::vector<std::size_t>{1, 2, 4, 3},
           "window dims 1, 2, 4, 3");
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    if (r.nodes[i].degree <= 2 && i + 1 < r.nodes.size())
      l.expect(r.exact_at[i].value_or(false), "exact at node " + std::to_string(i));
}

void multiplicity_split(Ledger& l) {
  auto w = corpus(Field::rationals());
  auto k1 = w.bimodule("K^1");
  std::vector<Family> fams;
  for (std::size_t m : {2, 3, 4}) fams.push_back(Family{{k1}, {m}, nullptr, nullptr});
  fams.push_back(w.family("KK-2-2"));
  for (const auto& fam : fams) {
    auto r = multiplicity_split_check(fam, 4);
    l.expect(r.identity_holds.size() == 3 && r.all_hold(), "multiplicities " + std::to_string(fam.multiplicities[0]) +
                                                               " x" + std::to_string(fam.members.size()));
  }
}

void mayer_vietoris(Ledger& l) {
  auto w = corpus(Field::rationals());
  const auto& fam = w.family("KK");
  TriangularContext ctx(fam.a(), fam.b(), fam.members, 4);
  auto r = cover_report(ctx, {0, 1}, {{}, {0}, {1}}, SequenceKind::MayerVietoris);
  l.expect(r.short_exact_at_cochain_level, "short exact");
  l.expect(r.all_verified_exact() && r.verified_count() + 1 == r.nodes.size(), "exact at all interior nodes");
  auto ids = map_identities(ctx, {0, 1});
  l.expect(ids.functoriality, "functoriality");
  l.expect(ids.section_functoriality, "section functoriality");
  l.expect(ids.section_identity, "section identity");
  l.expect(ids.projections_are_chain_maps, "projections are chain maps");
}

void cone_equals_hh(Ledger& l) {
  for (const Field& f : {Field::rationals(), Field::prime(2)}) {
    auto w = corpus(f);
    for (const auto& [name, t] : w.algebras) {
      if (!t->triangular() || t->dim() > 6) continue;
      const auto& lay = *t->triangular();
      auto cone = lambda_cone(Family{{lay.m}, {}, lay.a, lay.b}, 4);
      l.expect(cone.cone.squares_to_zero(), name + " cone d^2");
      l.expect(cohomology(cone.cone, false).dims == hh_dims(*t, 4), name + " over " + f.name());
    }
  }
}

void lie_layer(Ledger& l) {
  auto w = corpus(Field::rationals());
  for (const auto& [name, t] : w.algebras) {
    auto c = lie_checks(t);
    l.expect(c.hh1_matches_cochain, name + " HH^1");
    l.expect(c.jacobi && c.int_is_ideal && c.bracket_closes, name + " Lie structure");
  }
  for (const char* name : {"K2", "K3"}) {
    const auto& t = w.algebra(name);
    auto ds = derivation_space(t);
    std::vector<TriangularDerivation> parts;
    for (const auto& d : ds.der_basis) {
      parts.push_back(decompose_derivation(*t, d));
      l.expect(recompose_derivation(*t, parts.back()) == d, std::string(name) + " roundtrip");
    }
    for (const auto& a : parts)
      for (const auto& b : parts) l.expect(bracket_check(*t, a, b), std::string(name) + " bracket formula");
    auto c = lie_checks(t);
    l.expect(c.jacobi, std::string(name) + " Jacobi");
  }
}

void delta(Ledger& l) {
  auto w = corpus(Field::rationals());
  for (const auto& [name, m] : w.bimodules) {
    auto same = delta_report(m, m, 3);
    l.expect(same.member && same.criterion_consistent(), name + " with N = M");
    auto fr = delta_report(m, free_bimodule(m->left_ptr(), m->right_ptr()), 3);
    l.expect(fr.member && fr.criterion_consistent(), name + " with N = A (x) B^o");
  }
  auto r = delta_report(w.bimodule("K^2"), w.bimodule("K^1"), 3);
  l.expect(r.member && r.sequence.has_value(), "K^2, K member");
  if (r.sequence) {
    bool exact = true;
    for (const auto& e : r.sequence->exact_at) exact = exact && e.value_or(false);
    l.expect(exact, "five-term sequence exact");
    l.expect(alternating_sum(*r.sequence, 0, r.sequence->nodes.size() - 1) == 0, "alternating sum");
  }
}

void series(Ledger& l) {
  auto w = corpus(Field::rationals());
  for (const auto& [name, m] : w.bimodules)
    for (std::size_t mult : {1, 2, 3}) {
      auto base = m->left().dim() + m->right().dim() + mult * m->dim();
      if (base > 10) continue;
      l.expect(kronecker_series_check(m, mult, 3).all_hold(), name + " x" + std::to_string(mult));
    }
  for (std::uint32_t p : {2u, 3u}) {
    auto wp = corpus(Field::prime(p));
    for (const char* name : {"K^1", "K^2"}) {
      auto m = wp.bimodule(name);
      std::map<std::size_t, PoincarePoly> chi;
      for (std::size_t k = 1; k <= 4; ++k)
        chi[k] = poincare_poly(*triangular_algebra(m->left_ptr(), m->right_ptr(), power(m, k)), 4);
      l.expect(modp_periodicity_check(chi, p).holds(), std::string(name) + " mod " + std::to_string(p));
    }
  }
}

void properties(Ledger& l) {
  for (const Field& f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
    auto w = corpus(f);
    for (const auto& [name, a] : w.algebras) {
      l.expect(bar_cochain_complex(*a, *regular_bimodule(a), 4).squares_to_zero(), name + " bar d^2");
      l.expect(bar_cochain_complex(*a, *regular_bimodule(a), 4, false).squares_to_zero(), name + " plain bar d^2");
    }
    for (const auto& [name, m] : w.bimodules) {
      l.expect(ext_complex(*m, *m, 4).squares_to_zero(), name + " Ext d^2");
      auto tri = triangular_cochain(*m, *m, 4);
      l.expect(tri.complex.squares_to_zero(), name + " C_tri d^2");
      l.expect(kernel_of_restriction(tri).squares_to_zero(), name + " Ker i* d^2");
      auto bar = relative_bar(*m, 4);
      bool ok = true;
      for (std::size_t k = 0; k + 1 < bar.boundary.size(); ++k)
        ok = ok && multiply(f, bar.boundary[k], bar.boundary[k + 1]).is_zero();
      l.expect(ok, name + " relative bar d^2");
      auto cone = lambda_cone(Family{{m}, {}, nullptr, nullptr}, 4);
      l.expect(cone.cone.squares_to_zero(), name + " cone d^2");
      auto h = happel_report(m, 4);
      l.expect(h.short_exact_at_cochain_level && h.all_verified_exact(), name + " Happel exact");
      auto tr = cone_les_report(cone);
      l.expect(tr.all_verified_exact(), name + " cone triangle exact");
    }
    for (const auto& [name, fam] : w.families) {
      TriangularContext ctx(fam.a(), fam.b(), fam.members, 4);
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < fam.members.size(); ++i) ids.push_back(i);
      l.expect(ctx.full_cone(ids).complex.squares_to_zero(), name + " full cone d^2");
      l.expect(ctx.family_cone(ids).complex.squares_to_zero(), name + " family cone d^2");
      l.expect(subfamily_report(ctx, ids, {0}).all_verified_exact(), name + " subfamily exact");
    }
  }
  std::vector<std::vector<std::string>> cmds{
      {"validate", "--input", kData + "/corpus.json"},
      {"hh", "--algebra", "K3"},
      {"sequence", "happel", "--bimodule", "K^2", "--max-degree", "5"},
      {"sequence", "mv", "--family", "KK", "--f", "0", "--g", "1"},
      {"split", "theorem1", "--family", "KK-2-2"},
      {"lie", "der", "--algebra", "OnePoint"},
      {"lie", "delta", "--bimodule", "K^2", "--with", "K^1"},
      {"series", "kronecker", "--bimodule", "K^1", "--mult", "3"},
  };
  for (auto c : cmds) {
    c.insert(c.end(), {"--out", "json"});
    int c1 = 0, c2 = 0;
    auto a = cli(c, c1), b = cli(c, c2);
    l.expect(c1 == 0 && c2 == 0 && !a.empty() && a == b, "deterministic " + c[0]);
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Ledger&)> body;
  };
  std::vector<Criterion> all{
      {1, "Kronecker dimensions [1, m^2-1, 0], m = 1..4, over Q and F2", kronecker_dims},
      {2, "Happel sequence for K^2: dims 1, 2, 4, 3 and exactness", happel},
      {3, "multiplicity split identity for {K} x2,3,4 and {K,K} x(2,2)", multiplicity_split},
      {4, "Mayer-Vietoris for {K,K} and map identities", mayer_vietoris},
      {5, "cone cohomology equals bar-complex HH for triangular corpus entries", cone_equals_hh},
      {6, "Lie layer: HH^1 pipelines, Jacobi, bracket formula, roundtrip", lie_layer},
      {7, "delta membership and the five-term sequence", delta},
      {8, "series identity and mod-p classes", series},
      {9, "d^2 = 0, exactness and deterministic output", properties},
  };
  int failed = 0;
  for (const auto& c : all) {
    Ledger l;
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(l);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty() && l.failed.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  (" << l.checks
              << " checks, " << std::fixed << std::setprecision(2) << secs << " s)";
    if (!error.empty()) std::cout << "  error: " << error;
    for (std::size_t i = 0; i < l.failed.size() && i < 5; ++i) std::cout << (i ? "; " : "  failed: ") << l.failed[i];
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
