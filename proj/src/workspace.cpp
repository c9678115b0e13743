#include "hhlab/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hhlab {

using nlohmann::json;

const AlgebraPtr& Workspace::algebra(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) throw ReferenceError("unknown algebra '" + name + "'");
  return it->second;
}

const BimodulePtr& Workspace::bimodule(const std::string& name) const {
  auto it = bimodules.find(name);
  if (it == bimodules.end()) throw ReferenceError("unknown bimodule '" + name + "'");
  return it->second;
}

const Family& Workspace::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end()) throw ReferenceError("unknown family '" + name + "'");
  return it->second;
}

namespace {

Scalar parse_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos || s.find('/') != std::string::npos) {
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find_first_not_of("0", slash + 1) == std::string::npos)
      throw ParseError("zero denominator in '" + s + "'");
    Scalar x;
    if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("bad scalar '" + s + "'");
    x.canonicalize();
    return x;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::string den = "1" + std::string(s.size() - dot - 1, '0');
  Scalar x;
  if (digits.empty() || digits == "-" || x.set_str(digits + "/" + den, 10) != 0)
    throw ParseError("bad scalar '" + s + "'");
  x.canonicalize();
  return x;
}

class Loader {
 public:
  Loader(const json& doc, Field f) : doc_(doc) { ws_.field = f; }

  Workspace run() {
    for (const char* key : {"algebras", "bimodules", "families"})
      if (doc_.contains(key) && !doc_[key].is_object()) throw ParseError(std::string("'") + key + "' must be an object");
    for (const char* key : {"algebras", "bimodules"})
      if (doc_.contains(key))
        for (auto it = doc_[key].begin(); it != doc_[key].end(); ++it)
          key[0] == 'a' ? (void)algebra(it.key()) : (void)bimodule(it.key());
    if (doc_.contains("families"))
      for (auto it = doc_["families"].begin(); it != doc_["families"].end(); ++it) family(it.key(), it.value());
    return std::move(ws_);
  }

 private:
  const json& doc_;
  Workspace ws_;
  std::set<std::string> busy_a_, busy_m_;

  Scalar scalar(const json& v, const std::string& where) {
    Scalar x;
    if (v.is_string()) x = parse_decimal(v.get<std::string>());
    else if (v.is_number_integer()) x = Scalar(v.get<long>());
    else throw ParseError(where + ": scalar must be a string or an integer");
    if (ws_.field.is_prime_field() && x.get_den() % ws_.field.characteristic() == 0)
      throw ParseError(where + ": denominator of " + x.get_str() + " vanishes in " + ws_.field.name());
    return ws_.field.reduce(x);
  }

  static std::size_t index(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long>() < 0) throw ParseError(where + ": index must be a nonnegative integer");
    return v.get<std::size_t>();
  }

  static std::vector<std::string> strings(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) throw ParseError(where + ": expected an array of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  std::vector<std::array<std::size_t, 3>> quads(const json& v, const std::string& where, std::vector<Scalar>& cs) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of [i, j, k, c] entries");
    std::vector<std::array<std::size_t, 3>> out;
    for (const auto& t : v) {
      if (!t.is_array() || t.size() != 4) throw ParseError(where + ": expected [i, j, k, c], got " + t.dump());
      out.push_back({index(t[0], where), index(t[1], where), index(t[2], where)});
      cs.push_back(scalar(t[3], where));
    }
    return out;
  }

  const json& entry(const char* section, const std::string& name) {
    if (!doc_.contains(section) || !doc_[section].contains(name))
      throw ReferenceError(std::string(section[0] == 'a' ? "algebra" : "bimodule") + " '" + name +
                           "' is not defined");
    return doc_[section][name];
  }

  AlgebraPtr algebra(const std::string& name) {
    if (auto it = ws_.algebras.find(name); it != ws_.algebras.end()) return it->second;
    const json& e = entry("algebras", name);
    if (!busy_a_.insert(name).second) throw ReferenceError("algebra '" + name + "' refers to itself");
    const std::string where = "algebra '" + name + "'";
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    AlgebraPtr a;
    try {
      if (e.contains("triangular")) {
        auto parts = strings(e["triangular"], where);
        if (parts.size() != 3) throw ParseError(where + ": triangular expects [A, B, M]");
        a = triangular_algebra(algebra(parts[0]), algebra(parts[1]), bimodule(parts[2]));
      } else if (e.contains("product")) {
        auto parts = strings(e["product"], where);
        if (parts.size() != 2) throw ParseError(where + ": product expects [A, B]");
        a = product_algebra(algebra(parts[0]), algebra(parts[1]));
      } else {
        if (!e.contains("basis") || !e.contains("mult") || !e.contains("unit"))
          throw ParseError(where + ": needs basis, mult and unit");
        auto labels = strings(e["basis"], where);
        std::vector<Scalar> cs;
        auto ijk = quads(e["mult"], where, cs);
        std::vector<MultTerm> mult;
        for (std::size_t k = 0; k < ijk.size(); ++k) mult.push_back({ijk[k][0], ijk[k][1], ijk[k][2], cs[k]});
        if (!e["unit"].is_array()) throw ParseError(where + ": unit must be an array");
        Vec unit;
        for (const auto& u : e["unit"]) unit.push_back(scalar(u, where));
        a = make_algebra(ws_.field, labels, mult, unit);
      }
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    } catch (const IncompatibleBimodule& err) {
      throw ValidationError(where + ": " + err.what());
    }
    busy_a_.erase(name);
    return ws_.algebras[name] = a;
  }

  BimodulePtr bimodule(const std::string& name) {
    if (auto it = ws_.bimodules.find(name); it != ws_.bimodules.end()) return it->second;
    const json& e = entry("bimodules", name);
    if (!busy_m_.insert(name).second) throw ReferenceError("bimodule '" + name + "' refers to itself");
    const std::string where = "bimodule '" + name + "'";
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    BimodulePtr m;
    try {
      if (e.contains("regular")) {
        if (!e["regular"].is_string()) throw ParseError(where + ": regular expects an algebra name");
        m = regular_bimodule(algebra(e["regular"].get<std::string>()));
      } else if (e.contains("free")) {
        auto parts = strings(e["free"], where);
        if (parts.size() != 2) throw ParseError(where + ": free expects [A, B]");
        m = free_bimodule(algebra(parts[0]), algebra(parts[1]));
      } else {
        if (!e.contains("over") || !e.contains("basis")) throw ParseError(where + ": needs over and basis");
        auto over = strings(e["over"], where);
        if (over.size() != 2) throw ParseError(where + ": over expects [A, B]");
        AlgebraPtr a = algebra(over[0]), b = algebra(over[1]);
        auto labels = strings(e["basis"], where);
        auto terms = [&](const char* key) {
          std::vector<ActionTerm> out;
          if (!e.contains(key)) return out;
          std::vector<Scalar> cs;
          auto t = quads(e[key], where, cs);
          for (std::size_t k = 0; k < t.size(); ++k) out.push_back({t[k][0], t[k][1], t[k][2], cs[k]});
          return out;
        };
        m = make_bimodule(Bimodule::from_terms(a, b, labels, terms("left"), terms("right")));
      }
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
    busy_m_.erase(name);
    return ws_.bimodules[name] = m;
  }

  void family(const std::string& name, const json& e) {
    const std::string where = "family '" + name + "'";
    if (!e.is_object() || !e.contains("members")) throw ParseError(where + ": needs members");
    Family fam;
    for (const auto& n : strings(e["members"], where)) fam.members.push_back(bimodule(n));
    if (e.contains("multiplicities")) {
      if (!e["multiplicities"].is_array()) throw ParseError(where + ": multiplicities must be an array");
      for (const auto& v : e["multiplicities"]) {
        std::size_t k = index(v, where);
        if (k == 0) throw ValidationError(where + ": multiplicities must be positive");
        fam.multiplicities.push_back(k);
      }
      if (fam.multiplicities.size() != fam.members.size())
        throw ValidationError(where + ": one multiplicity per member expected");
    }
    if (e.contains("over")) {
      auto over = strings(e["over"], where);
      if (over.size() != 2) throw ParseError(where + ": over expects [A, B]");
      fam.base_a = algebra(over[0]);
      fam.base_b = algebra(over[1]);
    }
    if (fam.members.empty() && !fam.base_a) throw ValidationError(where + ": an empty family needs over");
    for (const auto& m : fam.members) {
      const AlgebraPtr a = fam.base_a ? fam.base_a : fam.members.front()->left_ptr();
      const AlgebraPtr b = fam.base_b ? fam.base_b : fam.members.front()->right_ptr();
      if (m->left_ptr() != a || m->right_ptr() != b)
        throw ValidationError(where + ": members are not over the same pair of algebras");
    }
    ws_.families[name] = std::move(fam);
  }
};

json scalar_json(const Field& f, const Scalar& x) { return f.format(x); }

template <class Map, class Ptr>
std::string name_of(const Map& m, const Ptr& p) {
  for (const auto& [k, v] : m)
    if (v == p) return k;
  return {};
}

}  // namespace

Workspace parse_workspace(const std::string& text, const std::optional<Field>& field) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("workspace must be a JSON object");
  Field f;
  if (field) {
    f = *field;
  } else if (doc.contains("field")) {
    if (!doc["field"].is_string()) throw ParseError("field must be a string such as \"Q\" or \"Fp:2\"");
    f = Field::parse(doc["field"].get<std::string>());
  }
  return Loader(doc, f).run();
}

Workspace load_workspace(const std::string& path, const std::optional<Field>& field) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), field);
}

json workspace_to_json(const Workspace& w) {
  const Field& f = w.field;
  json doc;
  doc["field"] = f.name();
  doc["algebras"] = json::object();
  doc["bimodules"] = json::object();
  doc["families"] = json::object();
  for (const auto& [name, a] : w.algebras) {
    json e;
    if (a->triangular()) {
      const auto& lay = *a->triangular();
      std::string an = name_of(w.algebras, lay.a), bn = name_of(w.algebras, lay.b), mn = name_of(w.bimodules, lay.m);
      if (!an.empty() && !bn.empty() && lay.m->dim() == 0 && mn.empty()) e["product"] = {an, bn};
      else if (!an.empty() && !bn.empty() && !mn.empty()) e["triangular"] = {an, bn, mn};
    }
    if (e.is_null()) {
      e["basis"] = a->labels();
      json mult = json::array();
      for (const auto& t : a->mult_terms()) mult.push_back({t.i, t.j, t.k, scalar_json(f, t.c)});
      e["mult"] = mult;
      json unit = json::array();
      for (const auto& u : a->unit()) unit.push_back(scalar_json(f, u));
      e["unit"] = unit;
    }
    doc["algebras"][name] = e;
  }
  for (const auto& [name, m] : w.bimodules) {
    json e;
    e["over"] = {name_of(w.algebras, m->left_ptr()), name_of(w.algebras, m->right_ptr())};
    e["basis"] = m->labels();
    for (const auto& [key, terms] : {std::pair{"left", m->left_terms()}, std::pair{"right", m->right_terms()}}) {
      json arr = json::array();
      for (const auto& t : terms) arr.push_back({t.alg, t.m, t.m_out, scalar_json(f, t.c)});
      e[key] = arr;
    }
    doc["bimodules"][name] = e;
  }
  for (const auto& [name, fam] : w.families) {
    json e;
    json members = json::array();
    for (const auto& m : fam.members) members.push_back(name_of(w.bimodules, m));
    e["members"] = members;
    if (!fam.multiplicities.empty()) e["multiplicities"] = fam.multiplicities;
    if (fam.base_a) e["over"] = {name_of(w.algebras, fam.base_a), name_of(w.algebras, fam.base_b)};
    doc["families"][name] = e;
  }
  return doc;
}

Workspace builtin_workspace(const Field& f) {
  Workspace w;
  w.field = f;
  AlgebraPtr k = ground_algebra(f);
  w.algebras["K"] = k;
  for (std::size_t m = 1; m <= 4; ++m) {
    auto km = trivial_bimodule(k, m);
    w.bimodules["K^" + std::to_string(m)] = km;
    w.algebras["K" + std::to_string(m)] = triangular_algebra(k, k, km);
  }
  AlgebraPtr a2 = upper_triangular(f, 2);
  w.algebras["A2"] = a2;
  w.algebras["A3"] = upper_triangular(f, 3);
  w.algebras["Dual"] = dual_numbers(f);
  w.algebras["KxK"] = product_algebra(k, k);
  // Simple A2-modules: E11 (resp. E22) acts as 1. The first is projective.
  auto simple = [&](bool second) {
    std::vector<ActionTerm> l{{second ? 2u : 0u, 0, 0, 1}};
    return make_bimodule(Bimodule::from_terms(a2, k, {"s"}, l, {{0, 0, 0, 1}}));
  };
  w.bimodules["P1"] = simple(false);
  w.bimodules["S2"] = simple(true);
  w.bimodules["A2-free"] = free_bimodule(a2, k);
  w.bimodules["Dual-reg"] = regular_bimodule(w.algebras["Dual"]);
  w.algebras["OnePoint"] = triangular_algebra(a2, k, w.bimodules["P1"]);
  w.families["KK"] = Family{{w.bimodules["K^1"], w.bimodules["K^1"]}, {1, 1}, nullptr, nullptr};
  w.families["KK-2-2"] = Family{{w.bimodules["K^1"], w.bimodules["K^1"]}, {2, 2}, nullptr, nullptr};
  return w;
}

}  // namespace hhlab
