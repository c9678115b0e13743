#include "hhlab/corpus.hpp"

namespace hhlab {

AlgebraPtr kronecker(const Field& f, std::size_t m) {
  AlgebraPtr k = ground_algebra(f);
  return triangular_algebra(k, k, trivial_bimodule(k, m));
}

AlgebraPtr upper_triangular(const Field& f, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      idx.emplace_back(i, j);
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  std::vector<MultTerm> terms;
  Vec unit(idx.size());
  for (std::size_t x = 0; x < idx.size(); ++x) {
    if (idx[x].first == idx[x].second) unit[x] = 1;
    for (std::size_t y = 0; y < idx.size(); ++y) {
      if (idx[x].second != idx[y].first) continue;
      for (std::size_t z = 0; z < idx.size(); ++z)
        if (idx[z].first == idx[x].first && idx[z].second == idx[y].second) terms.push_back({x, y, z, 1});
    }
  }
  return std::make_shared<const Algebra>(f, labels, terms, unit);
}

AlgebraPtr dual_numbers(const Field& f) {
  return std::make_shared<const Algebra>(f, std::vector<std::string>{"1", "e"},
                                         std::vector<MultTerm>{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}, Vec{1, 0});
}

AlgebraPtr Family::a() const {
  if (!members.empty()) return members.front()->left_ptr();
  if (!base_a) throw Error("empty family has no base algebras");
  return base_a;
}

AlgebraPtr Family::b() const {
  if (!members.empty()) return members.front()->right_ptr();
  if (!base_b) throw Error("empty family has no base algebras");
  return base_b;
}

BimodulePtr Family::total() const {
  std::vector<BimodulePtr> parts;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = 0; k < (multiplicities.empty() ? 1 : multiplicities[i]); ++k) parts.push_back(members[i]);
  return direct_sum(parts);
}

BimodulePtr Family::reduced_total() const { return direct_sum(members); }

std::vector<CorpusEntry> corpus_algebras(const Field& f) {
  std::vector<CorpusEntry> out;
  AlgebraPtr k = ground_algebra(f);
  out.push_back({"K", k});
  for (std::size_t m = 1; m <= 4; ++m) out.push_back({"K" + std::to_string(m), kronecker(f, m)});
  out.push_back({"A2", upper_triangular(f, 2)});
  out.push_back({"A3", upper_triangular(f, 3)});
  out.push_back({"Dual", dual_numbers(f)});
  out.push_back({"KxK", product_algebra(k, k)});
  return out;
}

}  // namespace hhlab
