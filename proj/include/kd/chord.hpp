#pragma once

// One-vertex dessins as based chord diagrams, their intersection matrices
// and characteristic polynomials.

#include "kd/dessin.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kd {

class ChordDiagram {
 public:
  ChordDiagram() = default;

  /// Endpoint labels read from the basepoint; each label must occur twice.
  /// Chords are renumbered 1..m by first endpoint.
  static ChordDiagram from_endpoints(const std::vector<int>& labels);
  /// Whitespace-separated labels, e.g. `1 2 1 2`.
  static ChordDiagram parse(std::string_view text);

  int chord_count() const noexcept { return static_cast<int>(endpoints_.size() / 2); }
  const std::vector<int>& endpoints() const noexcept { return endpoints_; }
  std::string to_string() const;

  /// Same circle read from endpoint position `k`.
  ChordDiagram rebased(int k) const;
  /// One-vertex dessin: half-edge i sits at circle position i.
  Dessin to_dessin() const;

  bool operator==(const ChordDiagram&) const = default;

 private:
  std::vector<int> endpoints_;
};

/// Reads the rotation starting at the smallest half-edge id.
ChordDiagram to_chord_diagram(const Dessin& d);

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  int size() const noexcept { return n_; }
  int& operator()(int i, int j) { return data_[index(i, j)]; }
  int operator()(int i, int j) const { return data_[index(i, j)]; }
  bool operator==(const IntMatrix&) const = default;

  static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);
  std::vector<std::vector<int>> rows() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_ = 0;
  std::vector<int> data_;
};

/// Entry (i,j) is sign(i-j) when chords i+1 and j+1 interlace, else 0.
IntMatrix intersection_matrix(const ChordDiagram& cd);

/// Coefficients c[k] of x^k in det(M - xI), by Faddeev-LeVerrier.
std::vector<BigInt> char_poly(const IntMatrix& m);
/// Ascending rendering, e.g. `-6x^3 - x^5`.
std::string char_poly_to_string(const std::vector<BigInt>& coeffs);

/// Determinant of the principal submatrix on the rows in `rows` (bit i =
/// row i), by fraction-free elimination.
std::int64_t principal_minor(const IntMatrix& m, std::uint64_t rows);

struct ChordInvariants {
  QuasiTreeCounts counts;
  BigInt determinant;
  std::vector<BigInt> char_poly;
};

/// Quasi-tree counts read off the characteristic polynomial, and
/// |det(IM - iI)|.
ChordInvariants quasi_counts_and_det(const ChordDiagram& cd);

}  // namespace kd
