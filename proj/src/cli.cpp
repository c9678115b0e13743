#include "hhlab/cli.hpp"

#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhlab/liealg.hpp"
#include "hhlab/series.hpp"
#include "hhlab/workspace.hpp"

namespace hhlab {

using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string field;
  std::size_t max_degree = 4;
  std::string out = "text";
  std::optional<std::size_t> budget;
  std::string algebra, bimodule, bimodule2, family;
  std::size_t mult = 2;
  std::string subfamily, f_part, g_part, cover, mults = "1,2,3,4";
  std::size_t witness_m = 1, witness_n = 1;
};

struct Report {
  json data;
  std::vector<std::string> text;
  bool ok = true;
};

std::string join(const std::vector<std::size_t>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::size_t> parse_list(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ParseError(what + ": '" + tok + "' is not a nonnegative integer");
    }
  }
  return out;
}

json matrix_json(const Field& f, const Mat& m) {
  json rows = json::array();
  for (const auto& r : m.dense()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(f.format(x));
    rows.push_back(row);
  }
  return rows;
}

json vec_json(const Field& f, const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(f.format(x));
  return out;
}

std::string flag(bool b) { return b ? "holds" : "FAILS"; }

Report sequence_report(const Field& f, const SequenceReport& r) {
  Report rep;
  json nodes = json::array();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    json n{{"label", r.nodes[i].label}, {"degree", r.nodes[i].degree}, {"dim", r.nodes[i].dim}};
    n["exact"] = r.exact_at[i] ? json(*r.exact_at[i]) : json(nullptr);
    nodes.push_back(n);
  }
  json maps = json::array();
  for (const auto& m : r.maps) maps.push_back(matrix_json(f, m));
  rep.data = {{"kind", to_string(r.kind)},
              {"nodes", nodes},
              {"maps", maps},
              {"short_exact", r.short_exact_at_cochain_level},
              {"verified_nodes", r.verified_count()},
              {"all_exact", r.all_verified_exact()}};
  rep.ok = r.short_exact_at_cochain_level && r.all_verified_exact();
  rep.text.push_back("sequence " + to_string(r.kind) + ": " + std::to_string(r.nodes.size()) + " nodes");
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    std::string e = !r.exact_at[i] ? "not checked (truncation)" : (*r.exact_at[i] ? "exact" : "NOT EXACT");
    rep.text.push_back("  [" + std::to_string(r.nodes[i].degree) + "] " + r.nodes[i].label + "  dim " +
                       std::to_string(r.nodes[i].dim) + "  " + e);
  }
  rep.text.push_back(std::string("short exact at cochain level: ") + (r.short_exact_at_cochain_level ? "yes" : "NO"));
  return rep;
}

Report split_report(const SplitReport& r, const std::string& what) {
  Report rep;
  rep.data = {{"lhs", r.lhs_dims}, {"mid", r.mid_dims}, {"rhs", r.rhs_dims},
              {"identity_holds", r.identity_holds}, {"section_found", r.section_found}};
  rep.ok = r.all_hold();
  for (std::size_t n = 0; n < r.identity_holds.size(); ++n)
    rep.text.push_back(what + " degree " + std::to_string(n) + ": " + flag(r.identity_holds[n]));
  return rep;
}

TriangularContext context_of(const Family& fam, std::size_t n_max) {
  return TriangularContext(fam.a(), fam.b(), fam.members, n_max);
}

std::vector<std::size_t> all_ids(const Family& fam) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < fam.members.size(); ++i) ids.push_back(i);
  return ids;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  for (auto x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  return out;
}

class Runner {
 public:
  Runner(const Options& o, Workspace w) : o_(o), w_(std::move(w)), f_(w_.field), n_(o.max_degree) {}

  Report validate() {
    Report rep;
    json algs = json::object(), mods = json::object(), fams = json::object();
    for (const auto& [name, a] : w_.algebras) {
      auto v = validate_algebra(*a);
      algs[name] = {{"dim", a->dim()}, {"valid", v.ok()}, {"failures", v.failures}};
      rep.ok = rep.ok && v.ok();
      rep.text.push_back("algebra " + name + ": dim " + std::to_string(a->dim()) + (v.ok() ? ", valid" : ", INVALID"));
    }
    for (const auto& [name, m] : w_.bimodules) {
      auto v = validate_bimodule(*m);
      mods[name] = {{"dim", m->dim()}, {"valid", v.ok()}, {"failures", v.failures}};
      rep.ok = rep.ok && v.ok();
      rep.text.push_back("bimodule " + name + ": dim " + std::to_string(m->dim()) + (v.ok() ? ", valid" : ", INVALID"));
    }
    for (const auto& [name, fam] : w_.families) {
      fams[name] = {{"members", fam.members.size()}};
      rep.text.push_back("family " + name + ": " + std::to_string(fam.members.size()) + " members");
    }
    rep.data = {{"field", f_.name()}, {"algebras", algs}, {"bimodules", mods}, {"families", fams}};
    return rep;
  }

  Report hh() {
    auto dims = hh_dims(*w_.algebra(need(o_.algebra, "--algebra")), n_);
    return {{{"dims", dims}}, {"HH dims of " + o_.algebra + " over " + f_.name() + ": " + join(dims)}, true};
  }

  Report ext() {
    const auto& m = w_.bimodule(need(o_.bimodule, "--bimodule"));
    const auto& n = o_.bimodule2.empty() ? m : w_.bimodule(o_.bimodule2);
    require_same_base(*m, *n);
    auto dims = ext_dims(*m, *n, n_);
    return {{{"dims", dims}}, {"Ext dims: " + join(dims)}, true};
  }

  Report cone() {
    const auto& fam = w_.family(need(o_.family, "--family"));
    auto dims = modified_cohomology(fam, n_).dims;
    return {{{"dims", dims}}, {"modified cohomology of " + o_.family + ": " + join(dims)}, true};
  }

  Report sequence(const std::string& kind) {
    if (kind == "happel") return sequence_report(f_, happel_report(w_.bimodule(need(o_.bimodule, "--bimodule")), n_));
    if (kind == "lemma1")
      return sequence_report(f_, direct_sum_restriction_report(w_.bimodule(need(o_.bimodule, "--bimodule")),
                                                               w_.bimodule(need(o_.bimodule2, "--with")), n_));
    const auto& fam = w_.family(need(o_.family, "--family"));
    auto ctx = context_of(fam, n_);
    auto ids = all_ids(fam);
    if (kind == "lemma3")
      return sequence_report(f_, subfamily_report(ctx, ids, parse_list(o_.subfamily, "--subfamily")));
    if (kind == "mv") {
      auto fp = parse_list(need(o_.f_part, "--f"), "--f"), gp = parse_list(need(o_.g_part, "--g"), "--g");
      return sequence_report(f_, cover_report(ctx, ids, {intersect(fp, gp), fp, gp}, SequenceKind::MayerVietoris));
    }
    std::vector<std::vector<std::size_t>> cover;
    std::stringstream ss(need(o_.cover, "--cover"));
    std::string part;
    while (std::getline(ss, part, ';')) cover.push_back(parse_list(part, "--cover"));
    return sequence_report(f_, cover_report(ctx, ids, cover));
  }

  Report split(const std::string& kind) {
    if (kind == "theorem1")
      return split_report(multiplicity_split_check(w_.family(need(o_.family, "--family")), n_), "multiplicity split");
    if (kind == "corollary1") {
      const auto& m = w_.bimodule(need(o_.bimodule, "--bimodule"));
      AlgebraPtr a = o_.algebra.empty() ? m->left_ptr() : w_.algebra(o_.algebra);
      auto r = projective_split_check(a, m, o_.mult, n_);
      Report rep = split_report(r.split, "projective split");
      rep.data["ext"] = r.ext_dims;
      rep.data["end_identity"] = r.end_identity;
      rep.data["end_dim"] = r.end_dim;
      rep.ok = r.all_hold();
      for (std::size_t n = 0; n < r.end_identity.size(); ++n)
        rep.text.push_back("HH of the endomorphism algebra equals Ext, degree " + std::to_string(n) + ": " +
                           flag(r.end_identity[n]));
      return rep;
    }
    auto r = exchange_check(w_.bimodule(need(o_.bimodule, "--bimodule")), w_.bimodule(need(o_.bimodule2, "--with")),
                            o_.witness_m, o_.witness_n, n_);
    Report rep;
    rep.data = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
    rep.ok = r.all_hold();
    for (std::size_t n = 0; n < r.holds.size(); ++n)
      rep.text.push_back("exchange formula degree " + std::to_string(n) + ": " + std::to_string(r.lhs[n]) + " vs " +
                         std::to_string(r.rhs[n]) + ", " + flag(r.holds[n]));
    return rep;
  }

  Report lie(const std::string& kind) {
    if (kind == "delta") return delta();
    const auto& t = w_.algebra(need(o_.algebra, "--algebra"));
    if (kind == "der") {
      auto ds = derivation_space(t);
      auto c = lie_checks(t);
      json bracket = json::array();
      for (const auto& row : ds.bracket) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vec_json(f_, v));
        bracket.push_back(r);
      }
      json checks{{"hh1_matches_cochain", c.hh1_matches_cochain}, {"jacobi", c.jacobi},
                  {"int_is_ideal", c.int_is_ideal}, {"bracket_closes", c.bracket_closes}};
      for (const auto& [k, v] : {std::pair{"block_pattern", c.block_pattern}, std::pair{"roundtrip", c.roundtrip},
                                 std::pair{"bracket_formula", c.bracket_formula},
                                 std::pair{"inner_dimension", c.inner_dimension}})
        if (v) checks[k] = *v;
      Report rep;
      rep.data = {{"der", c.der_dim}, {"inner", c.int_dim}, {"hh1", c.hh1_dim}, {"cochain_hh1", c.cochain_hh1},
                  {"bracket", bracket}, {"checks", checks}};
      if (c.center_only_formula) rep.data["center_only_inner_formula"] = *c.center_only_formula;
      rep.ok = c.all_hold();
      rep.text.push_back("dim Der = " + std::to_string(c.der_dim) + ", dim Int = " + std::to_string(c.int_dim) +
                         ", dim HH^1 = " + std::to_string(c.hh1_dim) + " (cochain pipeline " +
                         std::to_string(c.cochain_hh1) + ")");
      for (auto it = checks.begin(); it != checks.end(); ++it)
        rep.text.push_back("  " + it.key() + ": " + flag(it.value().get<bool>()));
      return rep;
    }
    auto ds = derivation_space(t);
    Report rep;
    json items = json::array();
    for (const auto& d : ds.der_basis) {
      auto p = decompose_derivation(*t, d);
      bool back = recompose_derivation(*t, p) == d;
      rep.ok = rep.ok && back;
      items.push_back({{"alpha", matrix_json(f_, p.alpha)}, {"beta", matrix_json(f_, p.beta)},
                       {"mu", matrix_json(f_, p.mu)}, {"m0", vec_json(f_, p.m0)}, {"roundtrip", back}});
    }
    rep.data = {{"derivations", items}};
    rep.text.push_back(std::to_string(items.size()) + " basis derivations decomposed, roundtrip " + flag(rep.ok));
    return rep;
  }

  Report delta() {
    const auto& m = w_.bimodule(need(o_.bimodule, "--bimodule"));
    const auto& n = w_.bimodule(need(o_.bimodule2, "--with"));
    auto r = delta_report(m, n, n_);
    Report rep;
    rep.data = {{"member", r.member}, {"restriction_surjective", r.restriction_surjective}};
    rep.ok = r.criterion_consistent();
    rep.text.push_back(std::string("member: ") + (r.member ? "yes" : "no") +
                       ", restriction surjective: " + (r.restriction_surjective ? "yes" : "no"));
    if (r.obstruction_witness)
      rep.data["witness"] = {{"alpha", matrix_json(f_, r.obstruction_witness->alpha)},
                             {"beta", matrix_json(f_, r.obstruction_witness->beta)}};
    if (r.sequence) {
      Report s = sequence_report(f_, *r.sequence);
      rep.data["sequence"] = s.data;
      rep.data["alternating_sum"] = alternating_sum(*r.sequence, 0, r.sequence->nodes.size() - 1);
      rep.ok = rep.ok && s.ok;
      rep.text.insert(rep.text.end(), s.text.begin(), s.text.end());
    }
    return rep;
  }

  Report series(const std::string& kind) {
    if (kind == "poincare") {
      auto p = poincare_poly(*w_.algebra(need(o_.algebra, "--algebra")), n_);
      return {{{"coefficients", p.coefficients}, {"poly", p.to_string()}}, {p.to_string()}, true};
    }
    const auto& m = w_.bimodule(need(o_.bimodule, "--bimodule"));
    if (kind == "kronecker") {
      auto r = kronecker_series_check(m, o_.mult, n_);
      Report rep;
      rep.data = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
      rep.ok = r.all_hold();
      rep.text.push_back("lhs " + PoincarePoly{r.lhs, n_}.to_string() + ", rhs " + PoincarePoly{r.rhs, n_}.to_string() +
                         ": " + flag(rep.ok));
      return rep;
    }
    if (!f_.is_prime_field()) throw ParseError("series modp needs --field Fp:P");
    std::map<std::size_t, PoincarePoly> chi;
    json polys = json::object();
    for (auto k : parse_list(o_.mults, "--mults")) {
      if (k == 0) throw ParseError("--mults: multiplicities must be positive");
      chi[k] = poincare_poly(*triangular_algebra(m->left_ptr(), m->right_ptr(), power(m, k)), n_);
      polys[std::to_string(k)] = chi[k].coefficients;
    }
    auto r = modp_periodicity_check(chi, f_.characteristic());
    json classes = json::object();
    for (const auto& [c, ms] : r.classes) classes[std::to_string(c)] = ms;
    Report rep;
    rep.data = {{"p", r.p}, {"series", polys}, {"classes", classes}, {"failures", r.failures}};
    rep.ok = r.holds();
    for (const auto& [c, ms] : r.classes)
      rep.text.push_back("m^2 = " + std::to_string(c) + " mod " + std::to_string(r.p) + ": m in {" + join(ms) + "}");
    for (const auto& s : r.failures) rep.text.push_back("FAILS: " + s);
    return rep;
  }

 private:
  const Options& o_;
  Workspace w_;
  Field f_;
  std::size_t n_;

  static const std::string& need(const std::string& v, const char* flag) {
    if (v.empty()) throw ParseError(std::string("missing ") + flag);
    return v;
  }
};

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hochschild cohomology of triangular algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", o.input, "workspace JSON file (default: bundled corpus)");
  app.add_option("--field", o.field, "Q or Fp:P");
  app.add_option("--max-degree", o.max_degree, "truncation; cohomology is reported below max-degree - 1");
  app.add_option("--out", o.out, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", o.budget, "largest dense size of one differential");
  app.add_option("--algebra", o.algebra);
  app.add_option("--bimodule", o.bimodule);
  app.add_option("--with", o.bimodule2, "second bimodule");
  app.add_option("--family", o.family);
  app.add_option("--mult", o.mult);
  app.add_option("--subfamily", o.subfamily, "member indices, e.g. 0,2");
  app.add_option("--f", o.f_part);
  app.add_option("--g", o.g_part);
  app.add_option("--cover", o.cover, "U0;U1;... with members comma separated");
  app.add_option("--mults", o.mults);
  app.add_option("--witness-m", o.witness_m);
  app.add_option("--witness-n", o.witness_n);

  std::string kind;
  auto* c_validate = app.add_subcommand("validate", "load and validate a workspace");
  auto* c_hh = app.add_subcommand("hh", "Hochschild cohomology dims");
  auto* c_ext = app.add_subcommand("ext", "Ext dims over A (x) B^o");
  auto* c_cone = app.add_subcommand("cone", "modified cohomology of a family");
  auto* c_seq = app.add_subcommand("sequence", "long exact sequences");
  c_seq->add_option("kind", kind)->required()->check(CLI::IsMember({"happel", "lemma1", "lemma3", "mv", "theorem4"}));
  auto* c_split = app.add_subcommand("split", "splitting identities");
  c_split->add_option("kind", kind)->required()->check(CLI::IsMember({"theorem1", "corollary1", "exchange"}));
  auto* c_lie = app.add_subcommand("lie", "derivations and HH^1");
  c_lie->add_option("kind", kind)->required()->check(CLI::IsMember({"der", "decompose", "delta"}));
  auto* c_series = app.add_subcommand("series", "Poincare series");
  c_series->add_option("kind", kind)->required()->check(CLI::IsMember({"poincare", "kronecker", "modp"}));

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  struct BudgetGuard {
    std::size_t saved = dense_budget();
    ~BudgetGuard() { set_dense_budget(saved); }
  } guard;
  try {
    if (!o.budget)
      if (const char* env = std::getenv("HHLAB_BUDGET")) {
        try {
          o.budget = std::stoull(env);
        } catch (const std::exception&) {
          throw ParseError(std::string("HHLAB_BUDGET is not a number: ") + env);
        }
      }
    if (o.budget) set_dense_budget(*o.budget);
    std::optional<Field> field;
    if (!o.field.empty()) field = Field::parse(o.field);
    Workspace w = o.input.empty() ? builtin_workspace(field.value_or(Field::rationals())) : load_workspace(o.input, field);
    Runner r(o, std::move(w));
    Report rep;
    if (c_validate->parsed()) rep = r.validate();
    else if (c_hh->parsed()) rep = r.hh();
    else if (c_ext->parsed()) rep = r.ext();
    else if (c_cone->parsed()) rep = r.cone();
    else if (c_seq->parsed()) rep = r.sequence(kind);
    else if (c_split->parsed()) rep = r.split(kind);
    else if (c_lie->parsed()) rep = r.lie(kind);
    else rep = r.series(kind);
    (void)c_series;
    if (o.out == "json") out << rep.data.dump(2) << "\n";
    else
      for (const auto& line : rep.text) out << line << "\n";
    return rep.ok ? kOk : kCheckFailed;
  } catch (const DegreeTooLarge& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ReferenceError& e) {
    err << "reference error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hhlab
