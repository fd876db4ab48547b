#pragma once

// Link invariants computed through sub-dessin expansions, with the state-sum
// bracket as the reference.

#include "kd/dessin.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kd {

using BigRational = boost::multiprecision::cpp_rational;

struct EngineOptions {
  int state_cap = 20;  // crossings, for the 2^n state sum
  int scan_cap = 24;   // edges, for 2^e sub-dessin scans
  int workers = 1;

  BracketOptions bracket() const { return {state_cap, workers}; }
  ScanOptions scan() const { return {scan_cap, workers}; }
};

/// All-A dessin of a diagram.
Dessin all_a_dessin(const PDCode& pd);

/// Sum over spanning sub-dessins H of A^(e(D) - 2e(H)) * delta^(f(H) - 1).
LaurentPoly bracket_from_dessin(const Dessin& d, const ScanOptions& opts = {});
LaurentPoly bracket_via_dessin(const PDCode& pd, const EngineOptions& opts = {});

/// State sum when the crossing count is within the state cap, otherwise
/// frontier contraction.
LaurentPoly reference_bracket(const PDCode& pd, const EngineOptions& opts = {});

/// (-A)^(-3w) <P> written in q = A^-2 (so t = q^2). Exponents are q powers.
LaurentPoly jones_polynomial(const PDCode& pd, const EngineOptions& opts = {});

/// |<P>| at A^2 = -i, exactly.
BigInt determinant_from_bracket(const LaurentPoly& bracket);
/// |sum_j (-1)^j s[j]|.
BigInt determinant_from_quasi_trees(const QuasiTreeCounts& q);
/// Spanning trees of the underlying multigraph (loops ignored).
BigInt spanning_tree_count(const Dessin& d);

enum class DetMethod { Quasitree, JonesEval, Charpoly, TreeDiff };

const char* to_string(DetMethod m) noexcept;
DetMethod parse_det_method(const std::string& name);

struct DeterminantReport {
  BigInt value;
  std::optional<BigInt> quasitree;
  std::optional<BigInt> jones_eval;
  std::optional<BigInt> charpoly;
  std::optional<BigInt> tree_difference;
};

/// Runs the requested methods and checks that they agree. With an empty
/// request, every method whose precondition holds is run. Explicitly
/// requested methods whose precondition fails raise Precondition; charpoly
/// reduces to a one-vertex diagram first when needed.
DeterminantReport determinant(const PDCode& pd, std::span<const DetMethod> methods = {},
                              const EngineOptions& opts = {});

struct CoefficientTable {
  int M = 0;  // e + 2v - 2 of the all-A dessin
  int m = 0;  // lowest exponent of the bracket
  std::vector<BigInt> a;      // a[l] = coefficient of A^(M - 4l)
  std::vector<BigInt> local;  // same, summed over sub-dessins of genus <= l only
  BigInt a0_closed_form;      // sum over genus-0 H with k(H) = v of (-1)^(v + e(H) - 1)
  bool loopless = false;
  int v = 0;

  bool locality_holds() const { return a == local; }
};

CoefficientTable coefficient_table(const PDCode& pd, const EngineOptions& opts = {});

/// (-1)^v (e' - v + 1), e' = number of distinct vertex pairs joined by edges.
BigInt a1_adequate(const Dessin& d);

/// Signed-binomial a_(M-l) of a one-vertex dessin.
BigInt one_vertex_coefficient(const Dessin& d, int l, const ScanOptions& opts = {});
/// The same for l = 0..levels-1 from a single scan.
std::vector<BigInt> one_vertex_coefficients(const Dessin& d, int levels, const ScanOptions& opts = {});

/// Bracket of a diagram with one-vertex all-A dessin from its weighted
/// contraction; `e_total` is the uncontracted edge count.
LaurentPoly weighted_bracket(const WeightedDessin& wd, int e_total, const ScanOptions& opts = {});

struct MinusTwoCheck {
  BigRational lhs;  // A^(-e) <P> at A^-4 = -2
  BigInt rhs;       // sum over H of (-2)^g(H)
};

MinusTwoCheck jones_at_minus_two(const PDCode& pd, const EngineOptions& opts = {});

/// Coefficient table, signed-binomial coefficients for every level, and the
/// t = -2 identity of a one-vertex diagram from one sub-dessin scan.
struct OneVertexAudit {
  CoefficientTable table;
  std::vector<BigInt> signed_binomial;
  MinusTwoCheck minus_two;
};

OneVertexAudit one_vertex_audit(const PDCode& pd, const EngineOptions& opts = {});

/// |prod p * prod q * (sum 1/p - sum 1/q)|.
BigInt pretzel_determinant(std::span<const int> p, std::span<const int> q);

}  // namespace kd
