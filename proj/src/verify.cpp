#include "kd/verify.hpp"

#include "kd/error.hpp"

#include <functional>

namespace kd {

namespace {

class Property {
 public:
  explicit Property(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = what;
    }
  }

  // Runs `body` for one case, recording exceptions as failures.
  void run(const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& ex) {
      check(false, label + ": " + ex.what());
    }
  }

  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "[" + s + "]";
}

}  // namespace

std::vector<PropertyResult> run_verify(const KnotTable& table, const VerifyOptions& opts) {
  const EngineOptions& eng = opts.engine;
  std::vector<NamedDiagram> corpus = table_corpus(table);
  for (auto& d : random_corpus(opts.random_count, opts.max_crossings, opts.seed)) corpus.push_back(std::move(d));
  const auto pretzels = pretzel_cases(3, 4);
  for (const auto& pc : pretzels)
    if (pc.p.size() + pc.q.size() <= 3) corpus.push_back({pc.name(), pretzel(pc.p, pc.q)});

  std::vector<PropertyResult> out;

  {
    Property p("oracle_equivalence");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const LaurentPoly reference = state_sum_bracket(d.pd, eng.bracket());
        p.check(bracket_via_dessin(d.pd, eng) == reference, d.name + ": dessin expansion differs from the state sum");
        p.check(contraction_bracket(d.pd) == reference, d.name + ": contraction differs from the state sum");
      });
    out.push_back(p.result());
  }
  {
    Property p("master_face_check");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const Dessin D = all_a_dessin(d.pd);
        scan_subdessins(
            D, [&](EdgeSet h, const Counts& c) {
              p.check(c.f == mixed_state_face_count(d.pd, h), d.name + ": face count differs from the mixed state");
            },
            eng.scan());
      });
    out.push_back(p.result());
  }
  {
    Property p("duality");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const Dessin D = all_a_dessin(d.pd);
        const Dessin Dual = dual(D);
        const auto s = quasi_tree_counts(D, eng.scan()).s;
        auto t = quasi_tree_counts(Dual, eng.scan()).s;
        std::reverse(t.begin(), t.end());
        p.check(s == t, d.name + ": s=" + join(s) + " reversed dual s=" + join(t));
        p.check(dessin_counts(Dual) == dessin_counts(build_dessin(d.pd, State::all(d.pd.crossing_count(), Smoothing::B))),
                d.name + ": dual counts differ from the all-B dessin");
      });
    out.push_back(p.result());
  }
  {
    Property p("determinant_agreement");
    for (const auto& d : corpus) p.run(d.name, [&] { p.check(determinant(d.pd, {}, eng).value >= 0, d.name); });
    out.push_back(p.result());
  }
  {
    Property p("mirror");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const PDCode m = mirror(d.pd);
        p.check(reference_bracket(m, eng) == reference_bracket(d.pd, eng).substitute_power(-1), d.name + ": mirrored bracket");
        p.check(determinant(m, {}, eng).value == determinant(d.pd, {}, eng).value, d.name + ": mirrored determinant");
      });
    out.push_back(p.result());
  }
  {
    Property p("pretzel_law");
    for (const auto& pc : pretzels)
      p.run(pc.name(), [&] {
        const PDCode pd = pretzel(pc.p, pc.q);
        const Counts c = dessin_counts(all_a_dessin(pd));
        int sp = 0;
        int sq = 0;
        for (int x : pc.p) sp += x;
        for (int x : pc.q) sq += x;
        const int n = static_cast<int>(pc.p.size());
        const int m = static_cast<int>(pc.q.size());
        p.check(c.v == n - m + sq && c.e == sp + sq && c.f == m - n + sp && c.g == 1, pc.name() + ": dessin counts");
        p.check(pretzel_determinant(pc.p, pc.q) == determinant_from_bracket(contraction_bracket(pd)), pc.name() + ": determinant");
      });
    out.push_back(p.result());
  }
  {
    Property p("one_vertex_reduction");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const Counts before = dessin_counts(all_a_dessin(d.pd));
        const PDCode r = reduce_to_one_vertex(d.pd);
        const Counts after = dessin_counts(all_a_dessin(r));
        p.check(after.v == 1 && after.e == before.e + 2 * (before.v - 1) && after.g == before.g + before.v - 1,
                d.name + ": reduction bookkeeping");
        p.check(contraction_bracket(r) == reference_bracket(d.pd, eng), d.name + ": reduction changed the bracket");
      });
    out.push_back(p.result());
  }
  {
    Property p("coefficient_locality");
    for (const auto& d : corpus)
      p.run(d.name, [&] {
        const CoefficientTable t = coefficient_table(d.pd, eng);
        p.check(t.locality_holds(), d.name + ": genus-restricted sums");
        p.check(t.a.front() == t.a0_closed_form, d.name + ": closed-form top coefficient");
        if (t.loopless) {
          const Dessin D = all_a_dessin(d.pd);
          p.check(t.a.front() == ((t.v - 1) % 2 == 0 ? 1 : -1), d.name + ": loopless top coefficient");
          if (t.a.size() > 1) p.check(t.a[1] == a1_adequate(D), d.name + ": adequate second coefficient");
        }
      });
    out.push_back(p.result());
  }
  {
    Property p("one_vertex_formulas");
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) {
        const std::string name = "twist(" + std::to_string(a) + "," + std::to_string(b) + ")";
        p.run(name, [&] {
          const PDCode pd = twist(a, b);
          const Dessin D = all_a_dessin(pd);
          p.check(weighted_bracket(contract_parallel(D), D.edge_count(), eng.scan()) == bracket_from_dessin(D, eng.scan()),
                  name + ": weighted bracket");
          const MinusTwoCheck m2 = jones_at_minus_two(pd, eng);
          p.check(m2.lhs == BigRational(m2.rhs), name + ": bracket at t = -2");
          const CoefficientTable t = coefficient_table(pd, eng);
          for (std::size_t l = 0; l < t.a.size(); ++l)
            p.check(one_vertex_coefficient(D, static_cast<int>(l), eng.scan()) == t.a[l], name + ": signed-binomial coefficient");
        });
      }
    out.push_back(p.result());
  }
  {
    Property p("chord_coherence");
    for (const auto& cd : random_chord_diagrams(30, 10, opts.seed)) {
      p.run(cd.to_string(), [&] {
        const ChordInvariants ci = quasi_counts_and_det(cd);
        const Dessin D = cd.to_dessin();
        p.check(ci.counts == quasi_tree_counts(D, eng.scan()), cd.to_string() + ": quasi-tree counts");
        p.check(char_poly(intersection_matrix(cd.rebased(1))) == ci.char_poly, cd.to_string() + ": basepoint dependence");
        const IntMatrix im = intersection_matrix(cd);
        FaceTracer tracer(D);
        for (EdgeSet h = 0; h < (EdgeSet{1} << cd.chord_count()); ++h) {
          const std::int64_t minor = principal_minor(im, h);
          p.check(minor == (tracer.faces(h) == 1 ? 1 : 0), cd.to_string() + ": principal minor");
        }
      });
    }
    out.push_back(p.result());
  }
  return out;
}

}  // namespace kd
