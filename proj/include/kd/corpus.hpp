#pragma once

// Diagram families for property checks.

#include "kd/chord.hpp"
#include "kd/diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kd {

struct NamedDiagram {
  std::string name;
  PDCode pd;
};

std::vector<NamedDiagram> table_corpus(const KnotTable& table);

/// Closures of seeded random braid words on 2..4 strands with 3..max_crossings
/// letters, every generator used (so the diagram is connected). Links included.
std::vector<NamedDiagram> random_corpus(int count, int max_crossings, std::uint64_t seed);

/// Pretzel diagrams with 1 <= p_i, q_j <= max_param, n, m >= 1, n + m <= max_columns,
/// one per multiset pair.
struct PretzelCase {
  std::vector<int> p;
  std::vector<int> q;
  std::string name() const;
};
std::vector<PretzelCase> pretzel_cases(int max_param, int max_columns);

/// Uniformly random matchings on 2m points, m drawn from [1, max_chords].
std::vector<ChordDiagram> random_chord_diagrams(int count, int max_chords, std::uint64_t seed);

}  // namespace kd
