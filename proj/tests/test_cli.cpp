#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hhlab/cli.hpp"
#include "hhlab/workspace.hpp"

using namespace hhlab;

namespace {

const std::string kData = HHLAB_DATA_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "hhlab");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string(HHLAB_TMP_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

const char* kNonAssociative = R"({
  "field": "Q",
  "algebras": {"Bad": {"basis": ["1", "x", "y"],
    "mult": [[0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],[1,0,1,"1"],[2,0,2,"1"],[1,2,1,"1"]],
    "unit": ["1","0","0"]}}
})";

}  // namespace

TEST_CASE("bundled files match the built-in corpus") {
  for (const Field& f : {Field::rationals(), Field::prime(2)}) {
    Workspace file = load_workspace(kData + "/corpus.json", f);
    Workspace mem = builtin_workspace(f);
    REQUIRE(file.algebras.size() == mem.algebras.size());
    for (const auto& [name, a] : mem.algebras) {
      CAPTURE(name);
      CHECK(file.algebra(name)->same_structure(*a));
      CHECK(bool(file.algebra(name)->triangular()) == bool(a->triangular()));
    }
    CHECK(file.families.size() == mem.families.size());
  }
  Workspace k = load_workspace(kData + "/kronecker.json");
  for (std::size_t m = 1; m <= 4; ++m) CHECK(k.algebra("K" + std::to_string(m))->dim() == m + 2);
  Workspace fam = load_workspace(kData + "/family_kk.json");
  CHECK(fam.family("KK").members.size() == 2);
}

TEST_CASE("workspace serialization roundtrip") {
  Workspace w = builtin_workspace(Field::prime(3));
  auto text = workspace_to_json(w).dump();
  Workspace back = parse_workspace(text);
  CHECK(back.field == Field::prime(3));
  for (const auto& [name, a] : w.algebras) CHECK(back.algebra(name)->same_structure(*a));
  CHECK(workspace_to_json(back).dump() == text);
}

TEST_CASE("loader errors name the offender") {
  CHECK_THROWS_WITH_AS(parse_workspace("{\"algebras\": {"), doctest::Contains("malformed JSON"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_workspace(R"({"bimodules": {"M": {"over": ["A", "A"], "basis": ["m"]}}})"),
      doctest::Contains("'A'"), ReferenceError);
  CHECK_THROWS_WITH_AS(parse_workspace(kNonAssociative), doctest::Contains("Bad"), ValidationError);
  CHECK_THROWS_AS(parse_workspace(R"({"algebras": {"K": {"basis": ["1"], "mult": [[0,0,0,"1/0"]], "unit": ["1"]}}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_workspace(R"({"field": "Fp:2", "algebras": {"K": {"basis": ["1"], "mult": [[0,0,0,"1"]],
                                      "unit": ["1/2"]}}})"),
                  ParseError);
  auto dec = parse_workspace(R"({"algebras": {"K": {"basis": ["1"], "mult": [[0,0,0,"0.5"]], "unit": ["2"]}}})");
  CHECK(dec.algebra("K")->unit() == Vec{2});
}

TEST_CASE("cli commands and exit codes") {
  auto r = call({"hh", "--input", kData + "/kronecker.json", "--algebra", "K2", "--max-degree", "4", "--out", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\n  \"dims\": [\n    1,\n    3,\n    0\n  ]\n}\n");
  CHECK(call({"series", "poincare", "--algebra", "K3"}).out == "1 + 8t\n");
  auto bad = write_temp("bad.json", "{\"algebras\": [1,");
  auto e = call({"validate", "--input", bad});
  CHECK(e.code == 2);
  CHECK(e.err.find("line") != std::string::npos);
  CHECK(call({"validate", "--input", write_temp("nonassoc.json", kNonAssociative)}).code == 2);
  CHECK(call({"hh", "--algebra", "Nope"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"hh", "--algebra", "K4", "--budget", "10"}).code == 3);
  setenv("HHLAB_BUDGET", "10", 1);
  CHECK(call({"hh", "--algebra", "K4"}).code == 3);
  unsetenv("HHLAB_BUDGET");
  CHECK(call({"hh", "--algebra", "K4"}).code == 0);
  CHECK(call({"split", "corollary1", "--bimodule", "S2"}).code == 2);
}

TEST_CASE("cli json output is deterministic") {
  std::vector<std::vector<std::string>> cmds{
      {"sequence", "happel", "--bimodule", "K^2", "--max-degree", "5"},
      {"lie", "der", "--algebra", "K3"},
      {"lie", "delta", "--bimodule", "K^2", "--with", "K^1"},
      {"series", "modp", "--bimodule", "K^1", "--field", "Fp:2"},
      {"validate", "--input", kData + "/corpus.json"},
  };
  for (auto c : cmds) {
    c.push_back("--out");
    c.push_back("json");
    auto a = call(c), b = call(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}
