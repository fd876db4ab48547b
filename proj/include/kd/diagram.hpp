#pragma once

// Planar-diagram (PD) codes, Kauffman states and the state-sum bracket.
//
// A crossing is a tuple (a,b,c,d) of arc labels listed counterclockwise
// starting at the incoming under-strand, so the under-strand runs a -> c.
// The A-smoothing joins (a,b) and (c,d); the B-smoothing joins (a,d) and (b,c).

#include "kd/poly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kd {

using ArcTuple = std::array<int, 4>;

class PDCode {
 public:
  PDCode() = default;

  /// Validates (every label exactly twice, labels positive) and renumbers
  /// labels to 1..n_arcs preserving their order. `signs`, when nonempty, must
  /// hold one +1/-1 per crossing.
  static PDCode from_tuples(std::vector<ArcTuple> crossings, std::vector<int> signs = {});

  const std::vector<ArcTuple>& crossings() const noexcept { return crossings_; }
  const ArcTuple& operator[](int x) const { return crossings_[static_cast<std::size_t>(x)]; }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int arc_count() const noexcept { return n_arcs_; }
  /// Explicit crossing signs; empty unless given with S[...].
  const std::vector<int>& signs() const noexcept { return signs_; }
  bool has_signs() const noexcept { return !signs_.empty(); }

  /// `X[a,b,c,d] ...` with an `S[+,-,...]` suffix when signs are present.
  std::string to_string() const;

  bool operator==(const PDCode&) const = default;

 private:
  std::vector<ArcTuple> crossings_;
  int n_arcs_ = 0;
  std::vector<int> signs_;
};

/// Parses whitespace-separated `X[a,b,c,d]` tokens with an optional trailing
/// `S[+,-,...]`.
PDCode parse_pd(std::string_view text);

/// Position-level view of the diagram as a 4-valent planar map. A dart is a
/// (crossing, position) pair with position in 0..3 counterclockwise.
struct Dart {
  int crossing = 0;
  int pos = 0;
  int id() const { return 4 * crossing + pos; }
  bool operator==(const Dart&) const = default;
};

class PlanarMap {
 public:
  explicit PlanarMap(const PDCode& pd);

  int crossing_count() const noexcept { return n_; }
  /// The other end of the arc leaving `d`.
  Dart opposite(Dart d) const { return opposite_[static_cast<std::size_t>(d.id())]; }
  /// Face (diagram region) containing corner (x, i), the sector between
  /// positions i and i+1.
  int face_of_corner(int crossing, int corner) const {
    return face_of_corner_[static_cast<std::size_t>(4 * crossing + corner)];
  }
  int face_count() const noexcept { return face_count_; }
  bool connected() const noexcept { return connected_; }
  /// True when the rotation system is a genus-0 embedding (faces = n + 2).
  bool planar() const noexcept { return connected_ && face_count_ == n_ + 2; }

 private:
  int n_ = 0;
  std::vector<Dart> opposite_;
  std::vector<int> face_of_corner_;
  int face_count_ = 0;
  bool connected_ = false;
};

enum class Smoothing : std::uint8_t { A, B };

class State {
 public:
  static State all(int crossings, Smoothing s);
  /// B on the crossings whose bit is set, A elsewhere.
  static State from_b_mask(int crossings, std::uint64_t mask);

  Smoothing operator[](int x) const { return choice_[static_cast<std::size_t>(x)]; }
  void set(int x, Smoothing s) { choice_[static_cast<std::size_t>(x)] = s; }
  int size() const noexcept { return static_cast<int>(choice_.size()); }
  int count(Smoothing s) const;

 private:
  std::vector<Smoothing> choice_;
};

/// Positions paired with `pos` by smoothing `s`.
constexpr int smoothing_partner(Smoothing s, int pos) {
  return s == Smoothing::A ? (pos ^ 1) : (3 - pos);
}

/// Turn (chord endpoint) index within a crossing: 0 for the turn through
/// position 0, 1 for the other. The endpoint id is 2*crossing + turn.
constexpr int turn_of(Smoothing s, int pos) {
  return s == Smoothing::A ? (pos >> 1) : ((pos == 0 || pos == 3) ? 0 : 1);
}

struct StateCircles {
  int count = 0;
  /// Circle id of each chord endpoint 2x + t.
  std::vector<int> circle_of_endpoint;
  /// Per circle, the endpoints met along one traversal.
  std::vector<std::vector<int>> cyclic_orders;
  /// Per circle, the position through which each turn in `cyclic_orders` was
  /// entered (fixes the traversal direction).
  std::vector<std::vector<int>> entry_positions;
};

StateCircles smooth_state(const PDCode& pd, const State& s);

/// Circle count only; n <= 64.
int count_state_circles(const PDCode& pd, std::uint64_t b_mask);

struct BracketOptions {
  int cap = 20;     // maximum crossing count for the 2^n enumeration
  int workers = 1;
};

/// Kauffman state sum over all 2^n states:
/// sum A^(#A - #B) * delta^(#circles - 1).
LaurentPoly state_sum_bracket(const PDCode& pd, const BracketOptions& opts = {});

/// The same bracket by contracting crossings one at a time while tracking
/// how the smoothed part pairs up the open arcs; polynomial in practice for
/// planar diagrams of a few dozen crossings.
LaurentPoly contraction_bracket(const PDCode& pd);

int component_count(const PDCode& pd);
bool is_connected(const PDCode& pd);

/// Crossing signs: the explicit S[...] list when present, otherwise inferred
/// from consecutive labeling of a one-component diagram.
std::vector<int> crossing_signs(const PDCode& pd);
int writhe(const PDCode& pd);

/// Mirror image: every tuple's cyclic order reversed.
PDCode mirror(const PDCode& pd);

// Generators.

/// Pretzel link K(p_1..p_n, -q_1..-q_m); `q` holds the magnitudes.
PDCode pretzel(std::span<const int> p, std::span<const int> q);
/// (p,q)-twist knot: a p-crossing clasp against a q-crossing twist region,
/// drawn so the all-A state has one circle.
PDCode twist(int p, int q);
/// Closure of a braid word on `strands` strands; letter +-i is sigma_i^(+-1).
PDCode braid_closure(int strands, std::span<const int> word);

/// Reidemeister II moves until the all-A state has a single circle.
PDCode reduce_to_one_vertex(const PDCode& pd);

// Bundled knot table.

class KnotTable {
 public:
  static KnotTable parse(std::string_view text);
  static KnotTable load(const std::string& path);
  /// Table at $KD_KNOT_TABLE if set, else the installed default.
  static KnotTable bundled();

  PDCode lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

std::string default_knot_table_path();

}  // namespace kd
