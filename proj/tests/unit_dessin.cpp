#include "doctest.h"

#include "kd/corpus.hpp"
#include "kd/dessin.hpp"
#include "kd/error.hpp"

#include <algorithm>

using namespace kd;

namespace {

const char* kTriangle = "V: (1 6) (2 3) (4 5) E: (1,2) (3,4) (5,6)";
const char* kInterleaved = "V: (1 2 3 4) E: (1,3) (2,4)";
const char* kNested = "V: (1 2 3 4) E: (1,4) (2,3)";

Dessin all_a(const PDCode& pd) { return build_dessin(pd, State::all(pd.crossing_count(), Smoothing::A)); }

// Same diagram with crossings listed in a different order, which moves the
// corner used to pick the outer face.
PDCode rotate_crossings(const PDCode& pd, int k) {
  std::vector<ArcTuple> t = pd.crossings();
  std::rotate(t.begin(), t.begin() + k, t.end());
  std::vector<int> signs = pd.signs();
  if (!signs.empty()) std::rotate(signs.begin(), signs.begin() + k, signs.end());
  return PDCode::from_tuples(t, signs);
}

}  // namespace

TEST_CASE("dessin text form round trips") {
  for (const char* text : {kTriangle, kInterleaved, kNested}) {
    const Dessin d = Dessin::parse(text);
    CHECK(Dessin::parse(d.to_string()) == d);
  }
  CHECK(Dessin::parse(kTriangle).to_string() == kTriangle);
  CHECK_THROWS_AS(Dessin::parse("V: (1 2) E: (1,3)"), Error);
  CHECK_THROWS_AS(Dessin::parse("V: (1 2 3) E: (1,2)"), Error);
  CHECK_THROWS_AS(Dessin::parse("V: (1 2) E: (1,2) (1,2)"), Error);
}

TEST_CASE("counts of small dessins") {
  const Dessin point = Dessin::from_rotation({{}}, {});
  CHECK(dessin_counts(point) == Counts{1, 0, 1, 1, 0, 0});
  const Dessin loop = Dessin::parse("V: (1 2) E: (1,2)");
  CHECK(dessin_counts(loop) == Counts{1, 1, 2, 1, 0, 1});
  const Counts il = dessin_counts(Dessin::parse(kInterleaved));
  CHECK(il.f == 1);
  CHECK(il.g == 1);
  const Counts ne = dessin_counts(Dessin::parse(kNested));
  CHECK(ne.f == 3);
  CHECK(ne.g == 0);
  const Counts tri = dessin_counts(Dessin::parse(kTriangle));
  CHECK(tri == Counts{3, 3, 2, 1, 0, 1});
  CHECK_THROWS_AS(Counts::from_vefk(1, 1, 1, 1), Error);
}

TEST_CASE("sub-dessin counts keep every vertex") {
  const Dessin tri = Dessin::parse(kTriangle);
  CHECK(dessin_counts(tri, EdgeSet{0}) == Counts{3, 0, 3, 3, 0, 0});
  CHECK(dessin_counts(tri, EdgeSet{1}) == Counts{3, 1, 2, 2, 0, 0});
}

TEST_CASE("duality") {
  const Dessin tri = Dessin::parse(kTriangle);
  const Counts dc = dessin_counts(dual(tri));
  CHECK(dc.v == 2);
  CHECK(dc.e == 3);
  CHECK(dc.f == 3);
  CHECK(dc.g == 0);
  const Counts di = dessin_counts(dual(Dessin::parse(kInterleaved)));
  CHECK(di == Counts{1, 2, 1, 1, 1, 2});
  for (const auto& d : table_corpus(KnotTable::bundled())) {
    const Dessin a = all_a(d.pd);
    const Dessin b = build_dessin(d.pd, State::all(d.pd.crossing_count(), Smoothing::B));
    CHECK(dessin_counts(dual(a)) == dessin_counts(b));
    CHECK(dessin_counts(dual(dual(a))) == dessin_counts(a));
    CHECK(quasi_tree_counts(dual(dual(a))) == quasi_tree_counts(a));
  }
  CHECK_THROWS_AS(dual(Dessin::parse("V: (1 2) (3 4) E: (1,2) (3,4)")), Error);
}

TEST_CASE("dessins of diagrams") {
  const PDCode t = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  const Counts tc = dessin_counts(all_a(t));
  CHECK(tc == Counts{3, 3, 2, 1, 0, 1});
  const Counts mc = dessin_counts(all_a(mirror(t)));
  CHECK(mc.v == 2);
  CHECK(mc.f == 3);
  CHECK(mc.g == 0);

  const Dessin d821 = all_a(KnotTable::bundled().lookup("8_21"));
  CHECK(d821.edge_count() == 8);
  int loops = 0;
  for (int e = 0; e < 8; ++e) loops += d821.is_loop(e) ? 1 : 0;
  CHECK(loops == 2);

  const Dessin tw = all_a(twist(2, 3));
  CHECK(tw.vertex_count() == 1);
  CHECK(tw.edge_count() == 5);
  CHECK_THROWS_AS(all_a(parse_pd("X[1,1,2,2] X[3,3,4,4]")), Error);
}

TEST_CASE("quasi-tree counts") {
  CHECK(quasi_tree_counts(Dessin::parse(kTriangle)).s == std::vector<std::int64_t>{3});
  CHECK(quasi_tree_counts(all_a(twist(2, 3))).s == std::vector<std::int64_t>{1, 6});
  CHECK(quasi_tree_counts(Dessin::parse(kInterleaved)).s == std::vector<std::int64_t>{1, 1});
  CHECK(quasi_tree_counts(all_a(KnotTable::bundled().lookup("8_21"))).s == std::vector<std::int64_t>{9, 24});
  CHECK_THROWS_AS(quasi_tree_counts(Dessin::parse("V: (1 2) (3 4) E: (1,2) (3,4)")), Error);
  const Dessin d = all_a(pretzel(std::vector<int>{2, 3}, std::vector<int>{5}));
  const auto one = quasi_tree_counts(d, {24, 1});
  CHECK(quasi_tree_counts(d, {24, 4}) == one);
  CHECK(quasi_tree_counts(d, {24, 7}) == one);
  CHECK_THROWS_AS(quasi_tree_counts(d, {5, 1}), Error);
}

TEST_CASE("sub-dessin scan visits every subset once") {
  int visits = 0;
  scan_subdessins(Dessin::from_rotation({{}}, {}), [&](EdgeSet, const Counts&) { ++visits; });
  CHECK(visits == 1);
  std::vector<EdgeSet> seen;
  scan_subdessins(Dessin::parse(kTriangle), [&](EdgeSet h, const Counts&) { seen.push_back(h); });
  CHECK(seen == std::vector<EdgeSet>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("faces match mixed-state circles") {
  const PDCode t = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  CHECK(mixed_state_face_count(t, 0) == 3);
  CHECK(mixed_state_face_count(t, 0b111) == 2);
  const PDCode kink = parse_pd("X[1,1,2,2]");
  CHECK(mixed_state_face_count(kink, 1) == dessin_counts(all_a(kink), EdgeSet{1}).f);
  std::vector<NamedDiagram> corpus = table_corpus(KnotTable::bundled());
  for (auto& d : random_corpus(25, 10, 41)) corpus.push_back(std::move(d));
  for (const auto& d : corpus) {
    int bad = 0;
    scan_subdessins(all_a(d.pd), [&](EdgeSet h, const Counts& c) {
      if (c.f != mixed_state_face_count(d.pd, h)) ++bad;
    });
    CHECK_MESSAGE(bad == 0, d.name);
  }
}

TEST_CASE("counts do not depend on the outer-face choice") {
  std::vector<NamedDiagram> corpus = table_corpus(KnotTable::bundled());
  for (auto& d : random_corpus(15, 9, 8)) corpus.push_back(std::move(d));
  for (const auto& d : corpus) {
    const Dessin base = all_a(d.pd);
    for (int k = 1; k < d.pd.crossing_count(); ++k) {
      const Dessin other = all_a(rotate_crossings(d.pd, k));
      CHECK(dessin_counts(other) == dessin_counts(base));
      CHECK(quasi_tree_counts(other) == quasi_tree_counts(base));
    }
  }
}

TEST_CASE("parallel contraction") {
  const Dessin tw = all_a(twist(2, 3));
  const WeightedDessin w = contract_parallel(tw);
  std::vector<int> weights = w.weight;
  std::sort(weights.begin(), weights.end());
  CHECK(weights == std::vector<int>{2, 3});
  CHECK(w.total_edges() == 5);
  CHECK(dessin_counts(w.base).g == dessin_counts(tw).g);

  const Dessin il = Dessin::parse(kInterleaved);
  const WeightedDessin wi = contract_parallel(il);
  CHECK(wi.weight == std::vector<int>{1, 1});
  CHECK(wi.base == il);

  const WeightedDessin wn = contract_parallel(Dessin::parse(kNested));
  CHECK(wn.weight == std::vector<int>{2});
  CHECK(dessin_counts(wn.base).g == 0);

  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) {
      const WeightedDessin wt = contract_parallel(all_a(twist(p, q)));
      std::vector<int> ws = wt.weight;
      std::sort(ws.begin(), ws.end());
      CHECK(ws == std::vector<int>{std::min(p, q), std::max(p, q)});
    }
  CHECK_THROWS_AS(contract_parallel(Dessin::parse(kTriangle)), Error);
}
