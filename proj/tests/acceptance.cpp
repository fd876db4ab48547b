// Acceptance suite: one PASS/FAIL line per criterion.

#include "kd/chord.hpp"
#include "kd/corpus.hpp"
#include "kd/error.hpp"
#include "kd/invariants.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace kd;

namespace {

constexpr int kRandomDiagrams = 200;
constexpr int kMaxCrossings = 10;
constexpr std::uint64_t kCorpusSeed = 20240601;
// Reduced diagrams beyond the default scan cap are skipped in criterion 8.
const int kReducedScanLimit = ScanOptions{}.cap;

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool passed() const { return failed_ == 0 && checks_ > 0; }
  long checks() const { return checks_; }
  long failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  long checks_ = 0;
  long failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::vector<NamedDiagram> corpus() {
  std::vector<NamedDiagram> out = table_corpus(KnotTable::bundled());
  for (auto& d : random_corpus(kRandomDiagrams, kMaxCrossings, kCorpusSeed)) out.push_back(std::move(d));
  return out;
}

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// a[l] read off a bracket computed without the sub-dessin scan.
std::vector<BigInt> contraction_bracket_coefficients(const PDCode& pd, const CoefficientTable& t) {
  const LaurentPoly b = contraction_bracket(pd);
  std::vector<BigInt> out;
  for (std::size_t l = 0; l < t.a.size(); ++l) out.push_back(b.coefficient_at(t.M - 4 * static_cast<int>(l)));
  return out;
}

EngineOptions contraction_engine() {
  EngineOptions e;
  e.state_cap = 12;
  return e;
}

void c1(Criterion& c, const std::vector<NamedDiagram>&) {
  const PDCode pd = KnotTable::bundled().lookup("8_21");
  const Dessin d = all_a_dessin(pd);
  const QuasiTreeCounts q = quasi_tree_counts(d);
  c.check(q.s == std::vector<std::int64_t>{9, 24}, "s(j) of 8_21");
  const DeterminantReport r = determinant(pd);
  c.check(r.value == 15, "det(8_21) = " + str(r.value));
  c.check(determinant_from_quasi_trees(q) == 15, "quasi-tree determinant");
  const CoefficientTable t = coefficient_table(pd);
  c.check(!t.a.empty() && t.a[0] == 0, "a_M of 8_21");
  c.check(t.a0_closed_form == 0, "closed-form a_M of 8_21");
}

void c2(Criterion& c, const std::vector<NamedDiagram>&) {
  const IntMatrix published = IntMatrix::from_rows({{0, 0, -1, -1, -1},
                                                    {0, 0, -1, -1, -1},
                                                    {1, 1, 0, 0, 0},
                                                    {1, 1, 0, 0, 0},
                                                    {1, 1, 0, 0, 0}});
  PDCode pd = twist(2, 3);
  if (all_a_dessin(pd).vertex_count() != 1) pd = reduce_to_one_vertex(pd);
  const ChordDiagram cd = to_chord_diagram(all_a_dessin(pd));
  c.check(cd.chord_count() == 5, "twist(2,3) has five chords");
  int matching_base = -1;
  for (int k = 0; k < 2 * cd.chord_count(); ++k)
    if (intersection_matrix(cd.rebased(k)) == published) {
      matching_base = k;
      break;
    }
  c.check(matching_base >= 0, "no basepoint of " + cd.to_string() + " gives the published matrix");
  if (matching_base >= 0) c.note("basepoint shift " + std::to_string(matching_base) + ": " + cd.rebased(matching_base).to_string());
  const ChordInvariants ci = quasi_counts_and_det(cd);
  c.check(char_poly_to_string(ci.char_poly) == "-6x^3 - x^5", "char poly " + char_poly_to_string(ci.char_poly));
  c.check(char_poly_to_string(char_poly(published)) == "-6x^3 - x^5", "char poly of the published matrix");
  c.check(ci.determinant == 5, "det = " + str(ci.determinant));
  c.check(determinant(twist(2, 3)).value == 5, "det(twist(2,3)) by every method");
}

void c3(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  for (const auto& d : corpus)
    c.check(bracket_via_dessin(d.pd) == state_sum_bracket(d.pd), d.name);
  // Convention calibration.
  const KnotTable table = KnotTable::bundled();
  c.check(determinant(table.lookup("4_1")).value == 5, "det(4_1) calibration");
  c.check(determinant(table.lookup("8_21")).value == 15, "det(8_21) calibration");
  const LaurentPoly j = jones_polynomial(table.lookup("3_1"));
  const LaurentPoly left = LaurentPoly::parse("A^-2 + A^-6 - A^-8");
  c.check(j == left || j == left.substitute_power(-1), "trefoil Jones calibration: " + j.to_string('q'));
}

void c4(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  for (const auto& d : corpus) {
    const Dessin a = all_a_dessin(d.pd);
    const int g = dessin_counts(a).g;
    const QuasiTreeCounts s = quasi_tree_counts(a);
    const QuasiTreeCounts t = quasi_tree_counts(dual(a));
    bool ok = s.s.size() == t.s.size() && static_cast<int>(s.s.size()) == g + 1;
    for (int j = 0; ok && j <= g; ++j) ok = s.s[static_cast<std::size_t>(j)] == t.s[static_cast<std::size_t>(g - j)];
    c.check(ok, d.name);
  }
}

void c5(Criterion& c, const std::vector<NamedDiagram>&) {
  const EngineOptions eng = contraction_engine();
  int unknots = 0;
  for (const PretzelCase& pc : pretzel_cases(4, 5)) {
    const PDCode pd = pretzel(pc.p, pc.q);
    const BigInt closed = pretzel_determinant(pc.p, pc.q);
    const BigInt jones = determinant_from_bracket(reference_bracket(pd, eng));
    c.check(closed == jones, pc.name() + ": closed " + str(closed) + " vs jones " + str(jones));
    int sp = 0, sq = 0;
    for (int x : pc.p) sp += x;
    for (int x : pc.q) sq += x;
    const int n = static_cast<int>(pc.p.size());
    const int m = static_cast<int>(pc.q.size());
    const Counts k = dessin_counts(all_a_dessin(pd));
    c.check(k.g == 1 && k.v == n - m + sq && k.e == sp + sq && k.f == m - n + sp, pc.name() + ": dessin counts");
    if (jones_polynomial(pd, eng) == LaurentPoly::constant(1)) ++unknots;
  }
  c.note(std::to_string(unknots) + " cases have trivial Jones polynomial");
}

void c6(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  for (const auto& d : corpus) {
    const Counts before = dessin_counts(all_a_dessin(d.pd));
    const PDCode r = reduce_to_one_vertex(d.pd);
    const Counts after = dessin_counts(all_a_dessin(r));
    c.check(after.v == 1, d.name + ": one all-A circle");
    c.check(after.e == before.e + 2 * (before.v - 1), d.name + ": e'");
    c.check(after.g == before.g + before.v - 1, d.name + ": g'");
    c.check(contraction_bracket(r) == state_sum_bracket(d.pd), d.name + ": bracket preserved");
  }
}

void c7(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  for (const auto& d : corpus) {
    const Dessin a = all_a_dessin(d.pd);
    const CoefficientTable t = coefficient_table(d.pd);
    c.check(t.locality_holds(), d.name + ": locality");
    c.check(t.a0_closed_form == t.a[0], d.name + ": a0 closed form");
    if (t.loopless) {
      const int sign = (t.v - 1) % 2 == 0 ? 1 : -1;
      c.check(t.a[0] == sign, d.name + ": loopless a0");
      c.check(t.a.size() > 1 && t.a[1] == a1_adequate(a), d.name + ": adequate a1");
    }
  }
}

void c8(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  int skipped = 0;
  std::vector<NamedDiagram> reduced;
  for (const auto& d : corpus) {
    const PDCode r = reduce_to_one_vertex(d.pd);
    if (r.crossing_count() > kReducedScanLimit) {
      ++skipped;
      continue;
    }
    reduced.push_back({d.name + " reduced", r});
  }
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) reduced.push_back({"twist(" + std::to_string(p) + "," + std::to_string(q) + ")", twist(p, q)});

  for (const auto& d : reduced) {
    const Dessin a = all_a_dessin(d.pd);
    if (a.vertex_count() != 1) {
      c.check(false, d.name + ": not one-vertex");
      continue;
    }
    const OneVertexAudit audit = one_vertex_audit(d.pd, contraction_engine());
    const CoefficientTable& t = audit.table;
    for (std::size_t l = 0; l < t.a.size(); ++l)
      c.check(audit.signed_binomial[l] == t.a[l], d.name + ": signed binomial l=" + std::to_string(l));
    c.check(t.a == contraction_bracket_coefficients(d.pd, t), d.name + ": table matches the contraction bracket");
    const MinusTwoCheck& m = audit.minus_two;
    c.check(m.lhs == BigRational(m.rhs), d.name + ": t=-2 identity " + str(m.lhs) + " vs " + str(m.rhs));
  }
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) {
      const PDCode pd = twist(p, q);
      const Dessin a = all_a_dessin(pd);
      c.check(weighted_bracket(contract_parallel(a), a.edge_count()) == bracket_via_dessin(pd),
              "weighted bracket twist(" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
  c.note(std::to_string(reduced.size()) + " one-vertex diagrams, " + std::to_string(skipped) +
         " reduced diagrams above " + std::to_string(kReducedScanLimit) + " crossings skipped");
}

void c9(Criterion& c, const std::vector<NamedDiagram>&) {
  for (const ChordDiagram& cd : random_chord_diagrams(100, 12, kCorpusSeed)) {
    const int m = cd.chord_count();
    const Dessin d = cd.to_dessin();
    const std::vector<BigInt> cp = char_poly(intersection_matrix(cd));
    const QuasiTreeCounts q = quasi_tree_counts(d);
    bool ok = true;
    for (int k = 0; k <= m; ++k) {
      BigInt expected = 0;
      if ((m - k) % 2 == 0 && static_cast<std::size_t>((m - k) / 2) < q.s.size()) expected = q.s[static_cast<std::size_t>((m - k) / 2)];
      if (m % 2 == 1) expected = -expected;
      ok = ok && cp[static_cast<std::size_t>(k)] == expected;
    }
    c.check(ok, cd.to_string() + ": coefficients");

    const IntMatrix im = intersection_matrix(cd);
    FaceTracer tracer(d);
    long bad = 0;
    for (EdgeSet mask = 0; mask < (EdgeSet{1} << m); ++mask) {
      const std::int64_t minor = principal_minor(im, mask);
      const bool one_face = tracer.faces(mask) == 1;
      if (!((minor == 0 || minor == 1) && (minor == 1) == one_face)) ++bad;
    }
    c.check(bad == 0, cd.to_string() + ": principal minors");

    bool same = true;
    for (int k = 1; k < 2 * m; ++k) same = same && char_poly(intersection_matrix(cd.rebased(k))) == cp;
    c.check(same, cd.to_string() + ": basepoint");
  }
}

void c10(Criterion& c, const std::vector<NamedDiagram>& corpus) {
  for (const auto& d : corpus) {
    if (d.pd.crossing_count() > kMaxCrossings) continue;
    long bad = 0;
    scan_subdessins(all_a_dessin(d.pd), [&](EdgeSet h, const Counts& k) {
      if (k.f != mixed_state_face_count(d.pd, h)) ++bad;
    });
    c.check(bad == 0, d.name);
  }
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<NamedDiagram> diagrams = corpus();
  struct Entry {
    int id;
    const char* title;
    std::function<void(Criterion&, const std::vector<NamedDiagram>&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "8_21 quasi-trees and determinant", c1},
      {2, "figure-8 via chord pipeline", c2},
      {3, "oracle equivalence", c3},
      {4, "duality", c4},
      {5, "pretzel law", c5},
      {6, "one-vertex reduction", c6},
      {7, "coefficient locality", c7},
      {8, "one-vertex formulas", c8},
      {9, "char-poly coherence", c9},
      {10, "master face cross-check", c10},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(c, diagrams);
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s (%ld checks, %.2f s)\n", e.id, c.passed() ? "PASS" : "FAIL", e.title, c.checks(), secs);
    for (const auto& n : c.notes()) std::printf("    note: %s\n", n.c_str());
    if (!c.passed()) {
      ++failed;
      std::printf("    %ld failed checks\n", c.failed());
      for (const auto& f : c.failures()) std::printf("    - %s\n", f.c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
