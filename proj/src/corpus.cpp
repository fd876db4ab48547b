#include "kd/corpus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace kd {

std::vector<NamedDiagram> table_corpus(const KnotTable& table) {
  std::vector<NamedDiagram> out;
  for (const auto& [name, code] : table.entries()) out.push_back({name, parse_pd(code)});
  return out;
}

std::vector<NamedDiagram> random_corpus(int count, int max_crossings, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NamedDiagram> out;
  while (static_cast<int>(out.size()) < count) {
    const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
    const int length = std::uniform_int_distribution<int>(std::max(3, strands - 1), std::max(3, max_crossings))(rng);
    std::vector<int> word;
    std::vector<char> used(static_cast<std::size_t>(strands), 0);
    for (int i = 0; i < length; ++i) {
      const int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
      const int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      word.push_back(sign * g);
      used[static_cast<std::size_t>(g)] = 1;
    }
    if (std::count(used.begin() + 1, used.end(), 1) != strands - 1) continue;
    std::string name = "braid" + std::to_string(strands) + "[";
    for (std::size_t i = 0; i < word.size(); ++i) name += (i ? "," : "") + std::to_string(word[i]);
    name += "]";
    out.push_back({name, braid_closure(strands, word)});
  }
  return out;
}

std::string PretzelCase::name() const {
  std::string s = "pretzel(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  s += "|";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(-q[i]);
  return s + ")";
}

std::vector<PretzelCase> pretzel_cases(int max_param, int max_columns) {
  // Nondecreasing sequences of length 1..max_columns-1 over 1..max_param.
  std::vector<std::vector<int>> seqs;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
    if (!cur.empty()) seqs.push_back(cur);
    if (static_cast<int>(cur.size()) == max_columns - 1) return;
    for (int v = cur.empty() ? 1 : cur.back(); v <= max_param; ++v) {
      cur.push_back(v);
      grow(cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  grow(cur);
  std::vector<PretzelCase> out;
  for (const auto& p : seqs)
    for (const auto& q : seqs)
      if (static_cast<int>(p.size() + q.size()) <= max_columns) out.push_back({p, q});
  return out;
}

std::vector<ChordDiagram> random_chord_diagrams(int count, int max_chords, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ChordDiagram> out;
  for (int i = 0; i < count; ++i) {
    const int m = std::uniform_int_distribution<int>(1, max_chords)(rng);
    std::vector<int> labels;
    for (int c = 1; c <= m; ++c) labels.insert(labels.end(), {c, c});
    std::shuffle(labels.begin(), labels.end(), rng);
    out.push_back(ChordDiagram::from_endpoints(labels));
  }
  return out;
}

}  // namespace kd
