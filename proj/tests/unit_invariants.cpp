#include "doctest.h"

#include "kd/corpus.hpp"
#include "kd/error.hpp"
#include "kd/invariants.hpp"

#include <vector>

using namespace kd;

namespace {

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kReducedTrefoil =
    "X[14,9,1,10] X[4,13,5,14] X[10,3,11,4] X[1,9,2,8] X[2,7,3,8] X[5,13,6,12] X[6,11,7,12]";

LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("bracket routes agree") {
  const PDCode t = parse_pd(kTrefoil);
  CHECK(bracket_via_dessin(t) == P("A^7 - A^3 - A^-5"));
  CHECK(reference_bracket(t) == P("A^7 - A^3 - A^-5"));
  CHECK(bracket_via_dessin(twist(2, 3)) == P("-A^5 + A - A^-3 + A^-7 - A^-11"));
  CHECK(bracket_from_dessin(all_a_dessin(parse_pd("X[1,1,2,2]"))) == P("-A^3"));

  EngineOptions small;
  small.state_cap = 4;
  std::vector<NamedDiagram> corpus = table_corpus(KnotTable::bundled());
  for (auto& d : random_corpus(20, 10, 3)) corpus.push_back(std::move(d));
  for (const auto& d : corpus) {
    const LaurentPoly ref = state_sum_bracket(d.pd);
    CHECK_MESSAGE(bracket_via_dessin(d.pd) == ref, d.name);
    CHECK_MESSAGE(reference_bracket(d.pd, small) == ref, d.name);
    EngineOptions par;
    par.workers = 3;
    CHECK_MESSAGE(bracket_via_dessin(d.pd, par) == ref, d.name);
  }
}

TEST_CASE("jones polynomial") {
  CHECK(jones_polynomial(parse_pd("X[1,1,2,2]")) == LaurentPoly::constant(1));
  CHECK(jones_polynomial(parse_pd("X[1,2,2,1]")) == LaurentPoly::constant(1));
  CHECK(jones_polynomial(parse_pd(kTrefoil)) == P("A^-2 + A^-6 - A^-8"));
  CHECK(jones_polynomial(mirror(parse_pd(kTrefoil))) == P("A^2 + A^6 - A^8"));
  const LaurentPoly fig8 = jones_polynomial(KnotTable::bundled().lookup("4_1"));
  CHECK(fig8 == fig8.substitute_power(-1));
  CHECK(fig8 == P("A^4 - A^2 + 1 - A^-2 + A^-4"));
}

TEST_CASE("determinant from the bracket") {
  CHECK(determinant_from_bracket(P("A^7 - A^3 - A^-5")) == 3);
  CHECK(determinant_from_bracket(P("-A^3")) == 1);
  CHECK(determinant_from_bracket(P("-A^2 - A^-2")) == 0);
  CHECK(determinant_from_quasi_trees(QuasiTreeCounts{{1, 6}}) == 5);
  CHECK(determinant_from_quasi_trees(QuasiTreeCounts{{9, 24}}) == 15);
}

TEST_CASE("determinant methods") {
  const KnotTable table = KnotTable::bundled();
  const std::vector<std::pair<const char*, int>> expected = {
      {"3_1", 3}, {"4_1", 5}, {"5_2", 7}, {"6_2", 11}, {"8_21", 15}};
  for (const auto& [name, det] : expected) {
    const DeterminantReport r = determinant(table.lookup(name));
    CHECK_MESSAGE(r.value == det, name);
    CHECK(r.quasitree == BigInt(det));
    CHECK(r.jones_eval == BigInt(det));
    CHECK(r.charpoly == BigInt(det));
  }
  const DeterminantReport tw = determinant(twist(2, 3));
  REQUIRE(tw.tree_difference.has_value());
  CHECK(*tw.tree_difference == 5);
  CHECK(determinant(table.lookup("8_21")).tree_difference == BigInt(15));
  CHECK_FALSE(determinant(parse_pd(kTrefoil)).tree_difference.has_value());

  const std::vector<DetMethod> only_charpoly{DetMethod::Charpoly};
  const DeterminantReport c = determinant(parse_pd(kTrefoil), only_charpoly);
  CHECK(c.value == 3);
  CHECK_FALSE(c.quasitree.has_value());

  const std::vector<DetMethod> tree{DetMethod::TreeDiff};
  CHECK(kind_of([&] { determinant(parse_pd(kTrefoil), tree); }) == ErrorKind::Precondition);
  CHECK(determinant(twist(3, 4), tree).value == determinant(twist(3, 4)).value);

  CHECK(parse_det_method("quasitree") == DetMethod::Quasitree);
  CHECK(parse_det_method("jones") == DetMethod::JonesEval);
  CHECK(parse_det_method("charpoly") == DetMethod::Charpoly);
  CHECK(parse_det_method("treediff") == DetMethod::TreeDiff);
  CHECK(kind_of([] { parse_det_method("magic"); }) == ErrorKind::BadInput);
}

TEST_CASE("spanning trees") {
  CHECK(spanning_tree_count(Dessin::parse("V: (1 6) (2 3) (4 5) E: (1,2) (3,4) (5,6)")) == 3);
  CHECK(spanning_tree_count(Dessin::parse("V: (1 2) E: (1,2)")) == 1);
}

TEST_CASE("coefficient table") {
  const CoefficientTable t = coefficient_table(parse_pd(kTrefoil));
  CHECK(t.M == 7);
  CHECK(t.m == -5);
  REQUIRE(t.a.size() == 4);
  CHECK(t.a[0] == 1);
  CHECK(t.a[1] == -1);
  CHECK(t.a0_closed_form == t.a[0]);
  CHECK(t.locality_holds());
  CHECK(t.loopless);

  const CoefficientTable mt = coefficient_table(mirror(parse_pd(kTrefoil)));
  CHECK(mt.M == 5);
  CHECK(mt.a[0] == -1);
  CHECK(mt.a[1] == 0);
  CHECK(mt.a0_closed_form == -1);

  const CoefficientTable e = coefficient_table(KnotTable::bundled().lookup("8_21"));
  CHECK(e.M == 12);
  CHECK(e.a[0] == 0);
  CHECK(e.a0_closed_form == 0);
  CHECK(e.a[1] == 2);
  CHECK_FALSE(e.loopless);
  CHECK(e.locality_holds());

  for (const auto& d : random_corpus(20, 10, 77)) {
    const CoefficientTable c = coefficient_table(d.pd);
    const LaurentPoly b = state_sum_bracket(d.pd);
    CHECK_MESSAGE(c.locality_holds(), d.name);
    CHECK_MESSAGE(c.a0_closed_form == c.a[0], d.name);
    CHECK(b.max_exponent() <= c.M);
    for (const auto& [k, coeff] : b.terms()) CHECK((c.M - k) % 4 == 0);
  }
}

TEST_CASE("second coefficient of adequate diagrams") {
  CHECK(a1_adequate(all_a_dessin(mirror(parse_pd(kTrefoil)))) == 0);
  CHECK(a1_adequate(Dessin::parse("V: (1 6) (2 3) (4 5) E: (1,2) (3,4) (5,6)")) == -1);
  CHECK(kind_of([] { a1_adequate(Dessin::parse("V: (1 2) E: (1,2)")); }) == ErrorKind::Precondition);
  for (const char* name : {"3_1", "4_1", "5_2", "6_2"}) {
    const PDCode pd = KnotTable::bundled().lookup(name);
    const Dessin d = all_a_dessin(pd);
    if (d.has_loop()) continue;
    CHECK_MESSAGE(a1_adequate(d) == coefficient_table(pd).a[1], name);
  }
}

TEST_CASE("one-vertex formulas") {
  const Dessin tw = all_a_dessin(twist(2, 3));
  CHECK(one_vertex_coefficient(tw, 0) == -1);
  CHECK(one_vertex_coefficient(tw, 1) == 1);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const PDCode pd = twist(p, q);
      const Dessin d = all_a_dessin(pd);
      const CoefficientTable t = coefficient_table(pd);
      for (int l = 0; l < static_cast<int>(t.a.size()); ++l) CHECK(one_vertex_coefficient(d, l) == t.a[static_cast<std::size_t>(l)]);
      CHECK(one_vertex_coefficients(d, static_cast<int>(t.a.size())) == t.a);
      CHECK(weighted_bracket(contract_parallel(d), d.edge_count()) == state_sum_bracket(pd));
    }
  CHECK(kind_of([] { one_vertex_coefficient(all_a_dessin(parse_pd(kTrefoil)), 0); }) == ErrorKind::Precondition);

  const MinusTwoCheck k = jones_at_minus_two(parse_pd("X[1,2,2,1]"));
  CHECK(k.lhs == 2);
  CHECK(k.rhs == 2);
  const MinusTwoCheck t = jones_at_minus_two(twist(2, 3));
  CHECK(t.lhs == -31);
  CHECK(t.rhs == -31);
  const PDCode reduced = parse_pd(kReducedTrefoil);
  CHECK(state_sum_bracket(reduced) == state_sum_bracket(parse_pd(kTrefoil)));
  const MinusTwoCheck r = jones_at_minus_two(reduced);
  CHECK(r.lhs == 11);
  CHECK(r.rhs == 11);
  CHECK(kind_of([] { jones_at_minus_two(parse_pd(kTrefoil)); }) == ErrorKind::Precondition);
}

TEST_CASE("pretzel determinant") {
  const std::vector<int> p{2, 3}, q{5};
  CHECK(pretzel_determinant(p, q) == 19);
  CHECK(determinant(pretzel(p, q)).value == 19);
  const std::vector<int> two{2}, three{3};
  CHECK(pretzel_determinant(two, three) == 1);
  for (int x = 1; x <= 3; ++x) {
    const std::vector<int> one{x};
    CHECK(pretzel_determinant(one, one) == 0);
    CHECK(component_count(pretzel(one, one)) == 2);
    CHECK(determinant_from_bracket(state_sum_bracket(pretzel(one, one))) == 0);
  }
  const std::vector<int> none;
  CHECK(kind_of([&] { pretzel_determinant(none, q); }) == ErrorKind::BadInput);
  const std::vector<int> zero{0};
  CHECK(kind_of([&] { pretzel_determinant(zero, q); }) == ErrorKind::BadInput);
}

TEST_CASE("mirror images") {
  for (const auto& d : random_corpus(15, 9, 5)) {
    const PDCode m = mirror(d.pd);
    CHECK(state_sum_bracket(m) == state_sum_bracket(d.pd).substitute_power(-1));
    CHECK(writhe(m) == -writhe(d.pd));
    CHECK(jones_polynomial(m) == jones_polynomial(d.pd).substitute_power(-1));
    CHECK(determinant(m).value == determinant(d.pd).value);
  }
}

TEST_CASE("one-vertex audit matches the separate routines") {
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const PDCode pd = twist(p, q);
      const OneVertexAudit a = one_vertex_audit(pd);
      const CoefficientTable t = coefficient_table(pd);
      CHECK(a.table.a == t.a);
      CHECK(a.table.local == t.local);
      CHECK(a.table.a0_closed_form == t.a0_closed_form);
      CHECK(a.signed_binomial == t.a);
      const MinusTwoCheck m = jones_at_minus_two(pd);
      CHECK(a.minus_two.lhs == m.lhs);
      CHECK(a.minus_two.rhs == m.rhs);
    }
  CHECK(kind_of([] { one_vertex_audit(parse_pd(kTrefoil)); }) == ErrorKind::Precondition);
}
