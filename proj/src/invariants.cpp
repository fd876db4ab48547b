#include "kd/invariants.hpp"

#include "kd/chord.hpp"
#include "kd/error.hpp"

#include <algorithm>
#include <set>

namespace kd {

namespace {

// Sub-dessin counts grouped by (genus, e(H), f(H), k(H) == v).
class SubTally {
 public:
  SubTally(const Dessin& d, const ScanOptions& opts) : v_(d.vertex_count()), e_(d.edge_count()) {
    const int max_g = e_ / 2;
    const int max_f = e_ + v_;
    dims_ = {max_g + 1, e_ + 1, max_f + 1};
    const std::vector<std::int64_t> identity(static_cast<std::size_t>(dims_[0] * dims_[1] * dims_[2] * 2), 0);
    counts_ = reduce_subdessins<std::vector<std::int64_t>>(
        d, opts, identity,
        [this](std::vector<std::int64_t>& acc, EdgeSet, const Counts& c) {
          ++acc[index(c.g, c.e, c.f, c.k == v_)];
        },
        [](std::vector<std::int64_t>& into, const std::vector<std::int64_t>& part) {
          for (std::size_t i = 0; i < into.size(); ++i) into[i] += part[i];
        });
  }

  template <class Fn>
  void for_each(Fn fn) const {
    for (int g = 0; g < dims_[0]; ++g)
      for (int eh = 0; eh < dims_[1]; ++eh)
        for (int fh = 0; fh < dims_[2]; ++fh)
          for (int full = 0; full < 2; ++full) {
            const std::int64_t n = counts_[index(g, eh, fh, full != 0)];
            if (n != 0) fn(g, eh, fh, full != 0, n);
          }
  }

  int v() const { return v_; }
  int e() const { return e_; }

 private:
  std::size_t index(int g, int eh, int fh, bool full) const {
    return static_cast<std::size_t>(((g * dims_[1] + eh) * dims_[2] + fh) * 2 + (full ? 1 : 0));
  }

  int v_;
  int e_;
  std::array<int, 3> dims_{};
  std::vector<std::int64_t> counts_;
};

class DeltaPowers {
 public:
  const LaurentPoly& operator()(int k) {
    while (static_cast<int>(cache_.size()) <= k) cache_.push_back(cache_.back() * LaurentPoly::delta());
    return cache_[static_cast<std::size_t>(k)];
  }

 private:
  std::vector<LaurentPoly> cache_{LaurentPoly::constant(1)};
};

// Bracket restricted to sub-dessins with genus <= max_genus.
LaurentPoly bracket_from_tally(const SubTally& t, int max_genus) {
  std::map<std::pair<int, int>, std::int64_t> grouped;  // (e(H), f(H)) -> count
  t.for_each([&](int g, int eh, int fh, bool, std::int64_t n) {
    if (g <= max_genus) grouped[{eh, fh}] += n;
  });
  DeltaPowers delta;
  LaurentPoly out;
  for (const auto& [key, n] : grouped) out += delta(key.second - 1).shifted(t.e() - 2 * key.first).scaled(n);
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

Dessin all_a_dessin(const PDCode& pd) { return build_dessin(pd, State::all(pd.crossing_count(), Smoothing::A)); }

LaurentPoly bracket_from_dessin(const Dessin& d, const ScanOptions& opts) {
  const SubTally tally(d, opts);
  return bracket_from_tally(tally, tally.e());
}

LaurentPoly bracket_via_dessin(const PDCode& pd, const EngineOptions& opts) {
  return bracket_from_dessin(all_a_dessin(pd), opts.scan());
}

LaurentPoly reference_bracket(const PDCode& pd, const EngineOptions& opts) {
  if (pd.crossing_count() <= opts.state_cap) return state_sum_bracket(pd, opts.bracket());
  return contraction_bracket(pd);
}

LaurentPoly jones_polynomial(const PDCode& pd, const EngineOptions& opts) {
  const int w = writhe(pd);
  const LaurentPoly normalized = reference_bracket(pd, opts) * LaurentPoly::monomial(w % 2 == 0 ? 1 : -1, -3 * w);
  LaurentPoly out;
  for (const auto& [k, c] : normalized.terms()) {
    if (k % 2 != 0) fail(ErrorKind::Internal, "odd A exponent in the normalized bracket");
    out.add_term(c, -k / 2);
  }
  return out;
}

BigInt determinant_from_bracket(const LaurentPoly& bracket) {
  const A2Evaluation ev = factor_and_eval_A2(bracket, GaussianInt{0, -1});
  bool exact = false;
  BigInt r = isqrt(ev.value.norm(), &exact);
  if (!exact) fail(ErrorKind::Internal, "bracket norm at A^2 = -i is not a perfect square");
  return r;
}

BigInt determinant_from_quasi_trees(const QuasiTreeCounts& q) {
  BigInt sum = 0;
  for (std::size_t j = 0; j < q.s.size(); ++j) sum += (j % 2 == 0 ? 1 : -1) * BigInt(q.s[j]);
  return abs_big(sum);
}

BigInt spanning_tree_count(const Dessin& d) {
  const int v = d.vertex_count();
  if (v <= 1) return 1;
  std::vector<std::vector<BigInt>> lap(static_cast<std::size_t>(v - 1), std::vector<BigInt>(static_cast<std::size_t>(v - 1)));
  for (const auto& [h1, h2] : d.edges()) {
    const int a = d.vertex_of(h1);
    const int b = d.vertex_of(h2);
    if (a == b) continue;
    if (a > 0) lap[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(a - 1)] += 1;
    if (b > 0) lap[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(b - 1)] += 1;
    if (a > 0 && b > 0) {
      lap[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] -= 1;
      lap[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] -= 1;
    }
  }
  return bareiss_determinant(std::move(lap));
}

const char* to_string(DetMethod m) noexcept {
  switch (m) {
    case DetMethod::Quasitree: return "quasitree";
    case DetMethod::JonesEval: return "jones";
    case DetMethod::Charpoly: return "charpoly";
    case DetMethod::TreeDiff: return "treediff";
  }
  return "?";
}

DetMethod parse_det_method(const std::string& name) {
  for (DetMethod m : {DetMethod::Quasitree, DetMethod::JonesEval, DetMethod::Charpoly, DetMethod::TreeDiff})
    if (name == to_string(m)) return m;
  if (name == "jones_eval") return DetMethod::JonesEval;
  if (name == "tree_difference") return DetMethod::TreeDiff;
  fail(ErrorKind::BadInput, "unknown determinant method '" + name + "'");
}

DeterminantReport determinant(const PDCode& pd, std::span<const DetMethod> methods, const EngineOptions& opts) {
  const Dessin d = all_a_dessin(pd);
  const Counts c = dessin_counts(d);
  std::set<DetMethod> wanted(methods.begin(), methods.end());
  const bool automatic = wanted.empty();
  if (automatic) {
    if (c.e <= opts.scan_cap) wanted.insert(DetMethod::Quasitree);
    if (pd.crossing_count() <= opts.state_cap || c.e <= opts.scan_cap) wanted.insert(DetMethod::JonesEval);
    wanted.insert(DetMethod::Charpoly);
    if (c.g == 1) wanted.insert(DetMethod::TreeDiff);
  } else if (wanted.count(DetMethod::TreeDiff) && c.g != 1) {
    fail(ErrorKind::Precondition, "treediff needs an all-A dessin of genus 1, got genus " + std::to_string(c.g));
  }

  DeterminantReport r;
  if (wanted.count(DetMethod::Quasitree)) r.quasitree = determinant_from_quasi_trees(quasi_tree_counts(d, opts.scan()));
  if (wanted.count(DetMethod::JonesEval)) r.jones_eval = determinant_from_bracket(reference_bracket(pd, opts));
  if (wanted.count(DetMethod::Charpoly)) {
    const PDCode one = c.v == 1 ? pd : reduce_to_one_vertex(pd);
    r.charpoly = quasi_counts_and_det(to_chord_diagram(all_a_dessin(one))).determinant;
  }
  if (wanted.count(DetMethod::TreeDiff))
    r.tree_difference = abs_big(spanning_tree_count(d) - spanning_tree_count(dual(d)));

  std::optional<BigInt> value;
  for (const auto* m : {&r.quasitree, &r.jones_eval, &r.charpoly, &r.tree_difference}) {
    if (!m->has_value()) continue;
    if (value && *value != **m) fail(ErrorKind::Internal, "determinant methods disagree");
    value = **m;
  }
  if (!value) fail(ErrorKind::CapExceeded, "no determinant method fits within the configured caps");
  r.value = *value;
  return r;
}

namespace {

CoefficientTable table_from_tally(const Dessin& d, const SubTally& tally) {
  CoefficientTable t;
  t.v = d.vertex_count();
  t.M = d.edge_count() + 2 * t.v - 2;
  t.loopless = !d.has_loop();
  const LaurentPoly bracket = bracket_from_tally(tally, tally.e());
  if (bracket.is_zero()) fail(ErrorKind::Internal, "zero bracket");
  t.m = bracket.min_exponent();
  const int levels = (t.M - t.m) / 4 + 1;
  for (int l = 0; l < levels; ++l) {
    t.a.push_back(bracket.coefficient_at(t.M - 4 * l));
    t.local.push_back(bracket_from_tally(tally, l).coefficient_at(t.M - 4 * l));
  }
  tally.for_each([&](int g, int eh, int, bool full, std::int64_t n) {
    if (g == 0 && full) t.a0_closed_form += ((t.v + eh - 1) % 2 == 0 ? 1 : -1) * BigInt(n);
  });
  return t;
}

}  // namespace

CoefficientTable coefficient_table(const PDCode& pd, const EngineOptions& opts) {
  const Dessin d = all_a_dessin(pd);
  return table_from_tally(d, SubTally(d, opts.scan()));
}

BigInt a1_adequate(const Dessin& d) {
  if (d.has_loop()) fail(ErrorKind::Precondition, "dessin has a loop; the diagram is not A-adequate");
  if (dessin_counts(d).k != 1) fail(ErrorKind::Precondition, "dessin is not connected");
  std::set<std::pair<int, int>> classes;
  for (const auto& [h1, h2] : d.edges()) {
    const int a = d.vertex_of(h1);
    const int b = d.vertex_of(h2);
    classes.insert({std::min(a, b), std::max(a, b)});
  }
  const int v = d.vertex_count();
  return BigInt((v % 2 == 0 ? 1 : -1) * (static_cast<int>(classes.size()) - v + 1));
}

namespace {

void require_one_vertex(const Dessin& d) {
  if (d.vertex_count() != 1) fail(ErrorKind::Precondition, "one-vertex formula applied to a dessin with " + std::to_string(d.vertex_count()) + " vertices");
}

BigInt signed_binomial(const SubTally& tally, int l) {
  BigInt sum = 0;
  tally.for_each([&](int g, int eh, int, bool, std::int64_t n) {
    if (g > l) return;
    sum += (eh % 2 == 0 ? 1 : -1) * BigInt(n) * binomial(eh - 2 * g, l - g);
  });
  return sum;
}

}  // namespace

BigInt one_vertex_coefficient(const Dessin& d, int l, const ScanOptions& opts) {
  require_one_vertex(d);
  return signed_binomial(SubTally(d, opts), l);
}

std::vector<BigInt> one_vertex_coefficients(const Dessin& d, int levels, const ScanOptions& opts) {
  require_one_vertex(d);
  const SubTally tally(d, opts);
  std::vector<BigInt> out;
  for (int l = 0; l < levels; ++l) out.push_back(signed_binomial(tally, l));
  return out;
}

LaurentPoly weighted_bracket(const WeightedDessin& wd, int e_total, const ScanOptions& opts) {
  const Dessin& base = wd.base;
  if (base.vertex_count() != 1) fail(ErrorKind::Precondition, "weighted dessin must have one vertex");
  // Polynomials in u = A^-4 are held as LaurentPoly with exponent = power of u.
  const LaurentPoly one = LaurentPoly::constant(1);
  const LaurentPoly u = LaurentPoly::monomial(1, 1);
  const LaurentPoly one_plus_u = one + u;
  std::vector<LaurentPoly> factor;  // (-u)^mu - 1 per chord class
  for (int mu : wd.weight) factor.push_back(LaurentPoly::monomial(mu % 2 == 0 ? 1 : -1, mu) - one);
  const int genus = dessin_counts(base).g;
  std::vector<LaurentPoly> cofactor;  // u^g (1+u)^(2G-2g)
  for (int g = 0; g <= genus; ++g) cofactor.push_back(u.pow(g) * one_plus_u.pow(2 * genus - 2 * g));

  LaurentPoly numerator;
  scan_subdessins(
      base,
      [&](EdgeSet edges, const Counts& c) {
        LaurentPoly term = cofactor[static_cast<std::size_t>(c.g)];
        for (int i = 0; i < base.edge_count(); ++i)
          if ((edges >> i) & 1U) term *= factor[static_cast<std::size_t>(i)];
        numerator += term;
      },
      opts);

  std::vector<BigInt> coeffs;
  if (!numerator.is_zero()) {
    if (numerator.min_exponent() < 0) fail(ErrorKind::Internal, "negative power of u in the weighted numerator");
    coeffs.assign(static_cast<std::size_t>(numerator.max_exponent()) + 1, 0);
    for (const auto& [k, c] : numerator.terms()) coeffs[static_cast<std::size_t>(k)] = c;
  }
  for (int step = 0; step < 2 * genus; ++step) {
    if (coeffs.empty()) break;
    std::vector<BigInt> quotient(coeffs.size() - 1);
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
      quotient[k - 1] = coeffs[k];
      coeffs[k - 1] -= coeffs[k];
    }
    if (coeffs[0] != 0) fail(ErrorKind::Internal, "weighted bracket numerator is not divisible by (1+u)^" + std::to_string(2 * genus));
    coeffs = std::move(quotient);
  }
  LaurentPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) out.add_term(coeffs[k], e_total - 4 * static_cast<int>(k));
  return out;
}

namespace {

const Dessin& require_one_vertex_diagram(const Dessin& d) {
  if (d.vertex_count() != 1)
    fail(ErrorKind::Precondition, "the t = -2 identity needs a one-vertex all-A dessin; reduce the diagram first");
  return d;
}

BigRational bracket_at_minus_two(const PDCode& pd, int e, const EngineOptions& opts) {
  BigRational lhs = 0;
  const LaurentPoly bracket = reference_bracket(pd, opts);
  for (const auto& [k, c] : bracket.terms()) {
    const int shifted = k - e;
    if (shifted > 0 || shifted % 4 != 0) fail(ErrorKind::Internal, "bracket exponent " + std::to_string(k) + " off the A^(e - 4j) lattice");
    BigRational term(c);
    for (int j = 0; j < -shifted / 4; ++j) term *= -2;
    lhs += term;
  }
  return lhs;
}

BigInt genus_sum_at_minus_two(const SubTally& tally) {
  BigInt rhs = 0;
  tally.for_each([&](int g, int, int, bool, std::int64_t n) {
    rhs += BigInt(n) * boost::multiprecision::pow(BigInt(-2), static_cast<unsigned>(g));
  });
  return rhs;
}

}  // namespace

MinusTwoCheck jones_at_minus_two(const PDCode& pd, const EngineOptions& opts) {
  const Dessin d = all_a_dessin(pd);
  require_one_vertex_diagram(d);
  return {bracket_at_minus_two(pd, d.edge_count(), opts), genus_sum_at_minus_two(SubTally(d, opts.scan()))};
}

OneVertexAudit one_vertex_audit(const PDCode& pd, const EngineOptions& opts) {
  const Dessin d = all_a_dessin(pd);
  require_one_vertex_diagram(d);
  const SubTally tally(d, opts.scan());
  OneVertexAudit out;
  out.table = table_from_tally(d, tally);
  for (int l = 0; l < static_cast<int>(out.table.a.size()); ++l) out.signed_binomial.push_back(signed_binomial(tally, l));
  out.minus_two = {bracket_at_minus_two(pd, d.edge_count(), opts), genus_sum_at_minus_two(tally)};
  return out;
}

BigInt pretzel_determinant(std::span<const int> p, std::span<const int> q) {
  if (p.empty() || q.empty()) fail(ErrorKind::BadInput, "pretzel determinant needs both positive and negative columns");
  BigRational sum = 0;
  BigInt product = 1;
  for (int x : p) {
    if (x < 1) fail(ErrorKind::BadInput, "pretzel parameters must be >= 1");
    sum += BigRational(1, x);
    product *= x;
  }
  for (int x : q) {
    if (x < 1) fail(ErrorKind::BadInput, "pretzel parameters must be >= 1");
    sum -= BigRational(1, x);
    product *= x;
  }
  const BigRational value = sum * BigRational(product);
  if (boost::multiprecision::denominator(value) != 1) fail(ErrorKind::Internal, "pretzel determinant is not integral");
  return abs_big(boost::multiprecision::numerator(value));
}

}  // namespace kd
