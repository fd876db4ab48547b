#include "kd/chord.hpp"

#include "kd/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kd {

ChordDiagram ChordDiagram::from_endpoints(const std::vector<int>& labels) {
  if (labels.empty()) fail(ErrorKind::BadInput, "chord diagram has no endpoints");
  std::map<int, int> seen;
  for (int l : labels) ++seen[l];
  for (const auto& [label, count] : seen)
    if (count != 2)
      fail(ErrorKind::BadInput, "chord " + std::to_string(label) + " has " + std::to_string(count) +
                                    " endpoints, expected 2");
  std::map<int, int> renumber;
  ChordDiagram cd;
  for (int l : labels) {
    auto [it, inserted] = renumber.try_emplace(l, static_cast<int>(renumber.size()) + 1);
    cd.endpoints_.push_back(it->second);
  }
  return cd;
}

ChordDiagram ChordDiagram::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> labels;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) fail(ErrorKind::BadInput, "bad chord label '" + tok + "'");
    labels.push_back(v);
  }
  return from_endpoints(labels);
}

std::string ChordDiagram::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < endpoints_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(endpoints_[i]);
  }
  return out;
}

ChordDiagram ChordDiagram::rebased(int k) const {
  const int n = static_cast<int>(endpoints_.size());
  std::vector<int> labels(endpoints_.size());
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = endpoints_[static_cast<std::size_t>(((i + k) % n + n) % n)];
  return from_endpoints(labels);
}

Dessin ChordDiagram::to_dessin() const {
  const int m = chord_count();
  std::vector<int> cycle(endpoints_.size());
  std::vector<std::pair<int, int>> edges(static_cast<std::size_t>(m), {-1, -1});
  for (int i = 0; i < 2 * m; ++i) {
    cycle[static_cast<std::size_t>(i)] = i;
    auto& e = edges[static_cast<std::size_t>(endpoints_[static_cast<std::size_t>(i)] - 1)];
    (e.first < 0 ? e.first : e.second) = i;
  }
  return Dessin::from_rotation({cycle}, edges);
}

ChordDiagram to_chord_diagram(const Dessin& d) {
  if (d.vertex_count() != 1)
    fail(ErrorKind::Precondition, "chord diagrams need a one-vertex dessin, got " + std::to_string(d.vertex_count()) + " vertices");
  const auto& cycle = d.rotation().front();
  if (cycle.empty()) fail(ErrorKind::Precondition, "dessin has no edges");
  const auto start = std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
  std::vector<int> labels;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    labels.push_back(d.edge_of(cycle[(static_cast<std::size_t>(start) + i) % cycle.size()]) + 1);
  return ChordDiagram::from_endpoints(labels);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.size(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.size()) fail(ErrorKind::BadInput, "matrix is not square");
    for (int j = 0; j < m.size(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::vector<std::vector<int>> IntMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  return out;
}

IntMatrix intersection_matrix(const ChordDiagram& cd) {
  const int m = cd.chord_count();
  std::vector<std::array<int, 2>> pos(static_cast<std::size_t>(m), {-1, -1});
  for (int i = 0; i < 2 * m; ++i) {
    auto& p = pos[static_cast<std::size_t>(cd.endpoints()[static_cast<std::size_t>(i)] - 1)];
    (p[0] < 0 ? p[0] : p[1]) = i;
  }
  IntMatrix im(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto& a = pos[static_cast<std::size_t>(i)];
      const auto& b = pos[static_cast<std::size_t>(j)];
      const bool b0 = a[0] < b[0] && b[0] < a[1];
      const bool b1 = a[0] < b[1] && b[1] < a[1];
      if (b0 != b1) im(i, j) = i > j ? 1 : -1;
    }
  }
  return im;
}

std::vector<BigInt> char_poly(const IntMatrix& m) {
  const int n = m.size();
  const auto sz = static_cast<std::size_t>(n);
  using Mat = std::vector<BigInt>;
  auto mul = [&](const Mat& a) {
    Mat out(sz * sz);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const int mik = m(i, k);
        if (mik == 0) continue;
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] += mik * a[static_cast<std::size_t>(k * n + j)];
      }
    return out;
  };
  // det(xI - M) = sum c[k] x^k, c[n] = 1.
  std::vector<BigInt> c(sz + 1);
  c[sz] = 1;
  Mat mk(sz * sz);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    Mat next = mul(mk);
    for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i * n + i)] += c[sz - static_cast<std::size_t>(k) + 1];
    mk = std::move(next);
    Mat am = mul(mk);
    BigInt trace = 0;
    for (int i = 0; i < n; ++i) trace += am[static_cast<std::size_t>(i * n + i)];
    if (trace % k != 0) fail(ErrorKind::Internal, "inexact Faddeev-LeVerrier division");
    c[sz - static_cast<std::size_t>(k)] = -trace / k;
  }
  if (n % 2 == 1)
    for (auto& x : c) x = -x;
  return c;
}

std::string char_poly_to_string(const std::vector<BigInt>& coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const BigInt& c = coeffs[k];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (mag != 1 || k == 0) out += mag.str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::int64_t principal_minor(const IntMatrix& m, std::uint64_t rows) {
  std::vector<int> idx;
  for (int i = 0; i < m.size(); ++i)
    if ((rows >> i) & 1U) idx.push_back(i);
  const int n = static_cast<int>(idx.size());
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(static_cast<std::size_t>(n), std::vector<__int128>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    auto& ak = a[static_cast<std::size_t>(k)];
    if (ak[static_cast<std::size_t>(k)] == 0) {
      int swap_with = -1;
      for (int r = k + 1; r < n && swap_with < 0; ++r)
        if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) swap_with = r;
      if (swap_with < 0) return 0;
      std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(swap_with)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      auto& ai = a[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < n; ++j)
        ai[static_cast<std::size_t>(j)] =
            (ai[static_cast<std::size_t>(j)] * ak[static_cast<std::size_t>(k)] - ai[static_cast<std::size_t>(k)] * ak[static_cast<std::size_t>(j)]) / prev;
      ai[static_cast<std::size_t>(k)] = 0;
    }
    prev = ak[static_cast<std::size_t>(k)];
  }
  return static_cast<std::int64_t>(sign * a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)]);
}

ChordInvariants quasi_counts_and_det(const ChordDiagram& cd) {
  const int m = cd.chord_count();
  ChordInvariants out;
  out.char_poly = char_poly(intersection_matrix(cd));
  const int genus = dessin_counts(cd.to_dessin()).g;
  for (int k = 0; k <= m; ++k) {
    const bool allowed = (m - k) % 2 == 0 && (m - k) / 2 <= genus;
    if (!allowed && out.char_poly[static_cast<std::size_t>(k)] != 0)
      fail(ErrorKind::Internal, "unexpected x^" + std::to_string(k) + " term in the characteristic polynomial");
  }
  for (int j = 0; j <= genus; ++j) {
    BigInt s = out.char_poly[static_cast<std::size_t>(m - 2 * j)];
    if (m % 2 == 1) s = -s;
    if (s < 0) fail(ErrorKind::Internal, "negative quasi-tree count from the characteristic polynomial");
    out.counts.s.push_back(static_cast<std::int64_t>(s));
  }
  GaussianInt value;
  GaussianInt power{1};
  for (const auto& c : out.char_poly) {
    value = value + GaussianInt{c} * power;
    power = power * GaussianInt::i_unit();
  }
  bool exact = false;
  out.determinant = isqrt(value.norm(), &exact);
  if (!exact) fail(ErrorKind::Internal, "|det(IM - iI)|^2 is not a perfect square");
  return out;
}

}  // namespace kd
