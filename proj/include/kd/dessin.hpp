#pragma once

// Oriented ribbon graphs (dessins) given by a rotation system: each vertex
// holds a cyclic sequence of half-edges, each edge pairs two half-edges.
// Faces are the orbits of "cross the edge, then step to the rotation
// successor".

#include "kd/diagram.hpp"
#include "kd/parallel.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kd {

/// Bitmask over the edges of a dessin (bit i = edge i).
using EdgeSet = std::uint64_t;

struct Counts {
  int v = 0;
  int e = 0;
  int f = 0;
  int k = 0;
  int g = 0;  // genus
  int n = 0;  // nullity

  /// Derives g and n; throws Internal if the Euler relation has no
  /// nonnegative integral genus.
  static Counts from_vefk(int v, int e, int f, int k);

  bool operator==(const Counts&) const = default;
};

class Dessin {
 public:
  Dessin() = default;

  /// Half-edge ids must be exactly 0..2e-1, each in one rotation and one edge.
  /// `labels` optionally maps edge index -> originating crossing.
  static Dessin from_rotation(std::vector<std::vector<int>> rotation,
                              std::vector<std::pair<int, int>> edges,
                              std::vector<int> labels = {});

  /// `V: (1 3 2 4) E: (1,2) (3,4)` with 1-based half-edge ids.
  static Dessin parse(std::string_view text);
  std::string to_string() const;

  int vertex_count() const noexcept { return static_cast<int>(rotation_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int half_edge_count() const noexcept { return 2 * edge_count(); }

  const std::vector<std::vector<int>>& rotation() const noexcept { return rotation_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  int vertex_of(int h) const { return vertex_of_[static_cast<std::size_t>(h)]; }
  int position_of(int h) const { return position_of_[static_cast<std::size_t>(h)]; }
  int edge_of(int h) const { return edge_of_[static_cast<std::size_t>(h)]; }
  int mate(int h) const { return mate_[static_cast<std::size_t>(h)]; }
  /// Rotation successor of h at its vertex.
  int next_at_vertex(int h) const;

  bool is_loop(int edge) const;
  bool has_loop() const;
  EdgeSet all_edges() const;

  bool operator==(const Dessin& rhs) const {
    return rotation_ == rhs.rotation_ && edges_ == rhs.edges_;
  }

 private:
  std::vector<std::vector<int>> rotation_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> labels_;
  std::vector<int> vertex_of_;
  std::vector<int> position_of_;
  std::vector<int> edge_of_;
  std::vector<int> mate_;
};

/// Reusable scratch for counting faces and components of spanning
/// sub-dessins. Not thread-safe; use one per worker.
class FaceTracer {
 public:
  explicit FaceTracer(const Dessin& d);

  int faces(EdgeSet edges);
  int components(EdgeSet edges);
  Counts counts(EdgeSet edges);

 private:
  int v_;
  int e_;
  std::vector<int> rot_;        // rotations, concatenated
  std::vector<int> rot_start_;  // offsets into rot_, one past the end last
  std::vector<int> edge_of_;
  std::vector<int> mate_;
  std::vector<std::pair<int, int>> ends_;  // vertex pair per edge
  std::vector<int> succ_;       // restricted rotation successor
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<int> parent_;
};

/// Counts of the whole dessin, or of the spanning sub-dessin on `sub`.
Counts dessin_counts(const Dessin& d, std::optional<EdgeSet> sub = std::nullopt);

/// Dessin of a Kauffman state: vertices are the state circles, edges the
/// crossings (edge i = crossing i, half-edges 2i and 2i+1 are its two turns),
/// and each vertex's cyclic order is the endpoint order along its circle,
/// counterclockwise when the circle is nested in an even number of circles.
Dessin build_dessin(const PDCode& pd, const State& s);

/// Vertices of the dual are the faces of `d`; edges are shared.
Dessin dual(const Dessin& d);

struct ScanOptions {
  int cap = 24;  // maximum edge count for a 2^e scan
  int workers = 1;
};

void check_scan_cap(const Dessin& d, const ScanOptions& opts);

/// Visits each of the 2^e spanning sub-dessins once, in binary counting order.
void scan_subdessins(const Dessin& d, const std::function<void(EdgeSet, const Counts&)>& visitor,
                     const ScanOptions& opts = {});

/// Partitioned scan: `fold(acc, edges, counts)` per sub-dessin within each
/// worker's range, `merge(into, part)` to combine partial results in order.
template <class Acc, class Fold, class Merge>
Acc reduce_subdessins(const Dessin& d, const ScanOptions& opts, const Acc& identity, Fold fold,
                      Merge merge) {
  check_scan_cap(d, opts);
  const std::uint64_t total = std::uint64_t{1} << d.edge_count();
  return parallel_reduce<Acc>(
      total, opts.workers, identity,
      [&](std::uint64_t begin, std::uint64_t end, Acc& acc) {
        FaceTracer tracer(d);
        for (std::uint64_t mask = begin; mask < end; ++mask) fold(acc, mask, tracer.counts(mask));
      },
      merge);
}

struct QuasiTreeCounts {
  std::vector<std::int64_t> s;  // s[j] = number of spanning j-quasi-trees

  bool operator==(const QuasiTreeCounts&) const = default;
};

/// Counts spanning quasi-trees by genus. Also checks, on every sub-dessin,
/// that any two of {connected, one face, e = v - 1 + 2g} imply the third.
QuasiTreeCounts quasi_tree_counts(const Dessin& d, const ScanOptions& opts = {});

/// Circles of the state that is B exactly on `edges` and A elsewhere.
int mixed_state_face_count(const PDCode& pd, EdgeSet edges);

struct WeightedDessin {
  Dessin base;               // one vertex, one chord per parallel class
  std::vector<int> weight;   // multiplicity per base edge
  std::vector<std::vector<int>> members;  // original edges per base edge

  int total_edges() const;
};

/// Merges runs of nested-adjacent parallel chords of a one-vertex dessin.
WeightedDessin contract_parallel(const Dessin& d);

}  // namespace kd
