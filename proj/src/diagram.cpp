#include "kd/diagram.hpp"

#include "kd/error.hpp"
#include "kd/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#ifndef KD_DEFAULT_KNOT_TABLE
#define KD_DEFAULT_KNOT_TABLE "data/knot_table.txt"
#endif

namespace kd {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

// ---------------------------------------------------------------------------
// PDCode

PDCode PDCode::from_tuples(std::vector<ArcTuple> crossings, std::vector<int> signs) {
  if (crossings.empty()) fail(ErrorKind::BadInput, "PD code has no crossings");
  if (!signs.empty() && signs.size() != crossings.size()) {
    fail(ErrorKind::BadInput, "sign list has " + std::to_string(signs.size()) +
                                  " entries for " + std::to_string(crossings.size()) +
                                  " crossings");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) fail(ErrorKind::BadInput, "crossing signs must be +1 or -1");
  }
  std::map<int, int> occurrences;
  for (const auto& t : crossings) {
    for (int label : t) {
      if (label < 1) fail(ErrorKind::BadInput, "arc label " + std::to_string(label) + " is not positive");
      ++occurrences[label];
    }
  }
  std::map<int, int> renumber;
  for (const auto& [label, count] : occurrences) {
    if (count != 2) {
      fail(ErrorKind::BadInput, "arc label " + std::to_string(label) + " occurs " +
                                    std::to_string(count) + " times (expected 2)");
    }
    const int next = static_cast<int>(renumber.size()) + 1;
    renumber.emplace(label, next);
  }
  for (auto& t : crossings)
    for (int& label : t) label = renumber.at(label);

  PDCode pd;
  pd.crossings_ = std::move(crossings);
  pd.n_arcs_ = static_cast<int>(renumber.size());
  pd.signs_ = std::move(signs);
  return pd;
}

std::string PDCode::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& t = crossings_[i];
    if (i) os << ' ';
    os << "X[" << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ']';
  }
  if (!signs_.empty()) {
    os << " S[";
    for (std::size_t i = 0; i < signs_.size(); ++i) os << (i ? "," : "") << (signs_[i] > 0 ? '+' : '-');
    os << ']';
  }
  return os.str();
}

PDCode parse_pd(std::string_view text) {
  std::vector<ArcTuple> crossings;
  std::vector<int> signs;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::BadInput, "PD parse error at offset " + std::to_string(pos) + ": " + why);
  };
  skip_ws();
  if (pos == text.size()) bad("empty input");
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    const char head = text[pos];
    if (head != 'X' && head != 'S') bad(std::string("unexpected character '") + head + "'");
    if (!signs.empty()) bad("S[...] must be the last token");
    ++pos;
    skip_ws();
    if (pos == text.size() || text[pos] != '[') bad("expected '['");
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) bad("missing ']'");
    std::string body(text.substr(pos + 1, close - pos - 1));
    std::vector<std::string> fields;
    std::stringstream ss(body);
    for (std::string item; std::getline(ss, item, ',');) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      fields.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    if (head == 'X') {
      if (fields.size() != 4) bad("crossing tuple must have 4 labels, got " + std::to_string(fields.size()));
      ArcTuple t{};
      for (int i = 0; i < 4; ++i) {
        const auto& f = fields[static_cast<std::size_t>(i)];
        if (f.empty() || !std::all_of(f.begin(), f.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          bad("arc label '" + f + "' is not a nonnegative integer");
        t[static_cast<std::size_t>(i)] = std::stoi(f);
      }
      crossings.push_back(t);
    } else {
      if (fields.empty()) bad("empty sign list");
      for (const auto& f : fields) {
        if (f == "+" || f == "+1" || f == "1") signs.push_back(1);
        else if (f == "-" || f == "-1") signs.push_back(-1);
        else bad("crossing sign '" + f + "' is not + or -");
      }
    }
    pos = close + 1;
  }
  return PDCode::from_tuples(std::move(crossings), std::move(signs));
}

// ---------------------------------------------------------------------------
// PlanarMap

PlanarMap::PlanarMap(const PDCode& pd) : n_(pd.crossing_count()) {
  const auto darts = static_cast<std::size_t>(4 * n_);
  opposite_.resize(darts);
  std::vector<Dart> first(static_cast<std::size_t>(pd.arc_count()) + 1, Dart{-1, -1});
  for (int x = 0; x < n_; ++x) {
    for (int p = 0; p < 4; ++p) {
      const int label = pd[x][static_cast<std::size_t>(p)];
      Dart& f = first[static_cast<std::size_t>(label)];
      if (f.crossing < 0) {
        f = Dart{x, p};
      } else {
        opposite_[static_cast<std::size_t>(f.id())] = Dart{x, p};
        opposite_[static_cast<std::size_t>(4 * x + p)] = f;
      }
    }
  }
  // Faces: corner (x,i) continues to the corner of the far end of position i+1.
  face_of_corner_.assign(darts, -1);
  for (std::size_t c = 0; c < darts; ++c) {
    if (face_of_corner_[c] >= 0) continue;
    int cur = static_cast<int>(c);
    while (face_of_corner_[static_cast<std::size_t>(cur)] < 0) {
      face_of_corner_[static_cast<std::size_t>(cur)] = face_count_;
      const Dart next = opposite(Dart{cur / 4, (cur % 4 + 1) % 4});
      cur = next.id();
    }
    ++face_count_;
  }
  UnionFind uf(n_);
  int parts = n_;
  for (int x = 0; x < n_; ++x)
    for (int p = 0; p < 4; ++p)
      if (uf.unite(x, opposite(Dart{x, p}).crossing)) --parts;
  connected_ = (parts == 1);
}

// ---------------------------------------------------------------------------
// States and circles

State State::all(int crossings, Smoothing s) {
  State st;
  st.choice_.assign(static_cast<std::size_t>(crossings), s);
  return st;
}

State State::from_b_mask(int crossings, std::uint64_t mask) {
  State st = all(crossings, Smoothing::A);
  for (int x = 0; x < crossings; ++x)
    if ((mask >> x) & 1u) st.choice_[static_cast<std::size_t>(x)] = Smoothing::B;
  return st;
}

int State::count(Smoothing s) const {
  return static_cast<int>(std::count(choice_.begin(), choice_.end(), s));
}

StateCircles smooth_state(const PDCode& pd, const State& s) {
  const int n = pd.crossing_count();
  if (s.size() != n) fail(ErrorKind::Precondition, "state size does not match the crossing count");
  const PlanarMap map(pd);
  StateCircles out;
  out.circle_of_endpoint.assign(static_cast<std::size_t>(2 * n), -1);
  std::vector<char> seen(static_cast<std::size_t>(4 * n), 0);
  for (int start = 0; start < 4 * n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    const int id = out.count++;
    out.cyclic_orders.emplace_back();
    out.entry_positions.emplace_back();
    Dart cur{start / 4, start % 4};
    while (!seen[static_cast<std::size_t>(cur.id())]) {
      const Smoothing sm = s[cur.crossing];
      const Dart exit{cur.crossing, smoothing_partner(sm, cur.pos)};
      seen[static_cast<std::size_t>(cur.id())] = 1;
      seen[static_cast<std::size_t>(exit.id())] = 1;
      const int endpoint = 2 * cur.crossing + turn_of(sm, cur.pos);
      out.circle_of_endpoint[static_cast<std::size_t>(endpoint)] = id;
      out.cyclic_orders.back().push_back(endpoint);
      out.entry_positions.back().push_back(cur.pos);
      cur = map.opposite(exit);
    }
  }
  return out;
}

namespace {

// Hot-loop circle counter: flat opposite-dart table, reused scratch.
class CircleCounter {
 public:
  explicit CircleCounter(const PDCode& pd) : n_(pd.crossing_count()) {
    const PlanarMap map(pd);
    opposite_.resize(static_cast<std::size_t>(4 * n_));
    for (int d = 0; d < 4 * n_; ++d) opposite_[static_cast<std::size_t>(d)] = map.opposite(Dart{d / 4, d % 4}).id();
    seen_.resize(opposite_.size());
  }

  int count(std::uint64_t b_mask) {
    std::fill(seen_.begin(), seen_.end(), 0);
    int circles = 0;
    for (int start = 0; start < 4 * n_; ++start) {
      if (seen_[static_cast<std::size_t>(start)]) continue;
      ++circles;
      int cur = start;
      while (!seen_[static_cast<std::size_t>(cur)]) {
        const int x = cur >> 2;
        const int p = cur & 3;
        const int q = ((b_mask >> x) & 1u) ? 3 - p : (p ^ 1);
        seen_[static_cast<std::size_t>(cur)] = 1;
        seen_[static_cast<std::size_t>(4 * x + q)] = 1;
        cur = opposite_[static_cast<std::size_t>(4 * x + q)];
      }
    }
    return circles;
  }

 private:
  int n_;
  std::vector<int> opposite_;
  std::vector<char> seen_;
};

}  // namespace

int count_state_circles(const PDCode& pd, std::uint64_t b_mask) {
  if (pd.crossing_count() > 64) fail(ErrorKind::CapExceeded, "circle counting by mask supports at most 64 crossings");
  return CircleCounter(pd).count(b_mask);
}

LaurentPoly state_sum_bracket(const PDCode& pd, const BracketOptions& opts) {
  const int n = pd.crossing_count();
  if (n > opts.cap || n > 62) {
    fail(ErrorKind::CapExceeded, "state sum over " + std::to_string(n) +
                                     " crossings exceeds the cap of " + std::to_string(opts.cap));
  }
  // tally[b * (n + 1) + (circles - 1)] over all states with b B-smoothings.
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  using Tally = std::vector<std::int64_t>;
  const std::uint64_t total = std::uint64_t{1} << n;
  const Tally tally = parallel_reduce<Tally>(
      total, opts.workers, Tally(width * width, 0),
      [&](std::uint64_t begin, std::uint64_t end, Tally& acc) {
        CircleCounter counter(pd);
        for (std::uint64_t mask = begin; mask < end; ++mask) {
          const int b = std::popcount(mask);
          const int c = counter.count(mask);
          ++acc[static_cast<std::size_t>(b) * width + static_cast<std::size_t>(c - 1)];
        }
      },
      [](Tally& into, const Tally& part) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += part[i];
      });

  std::vector<LaurentPoly> delta_pow(width);
  delta_pow[0] = LaurentPoly::constant(1);
  for (std::size_t i = 1; i < width; ++i) delta_pow[i] = delta_pow[i - 1] * LaurentPoly::delta();

  LaurentPoly bracket;
  for (std::size_t b = 0; b < width; ++b) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::int64_t cnt = tally[b * width + c];
      if (cnt == 0) continue;
      bracket += delta_pow[c].scaled(cnt).shifted(n - 2 * static_cast<int>(b));
    }
  }
  return bracket;
}

namespace {

// p / (-A^2 - A^-2), asserting exact division.
LaurentPoly divide_by_delta(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  // p = -A^-2 (A^4 + 1) q; divide A^(-lo) p by A^4 + 1.
  const int lo = p.min_exponent();
  std::vector<BigInt> r(static_cast<std::size_t>(p.max_exponent() - lo) + 1);
  for (const auto& [k, c] : p.terms()) r[static_cast<std::size_t>(k - lo)] = c;
  std::vector<BigInt> q(r.size());
  for (std::size_t k = r.size(); k-- > 4;) {
    q[k - 4] = r[k];
    r[k - 4] -= r[k];
    r[k] = 0;
  }
  for (const auto& c : r)
    if (c != 0) fail(ErrorKind::Internal, "contraction result is not divisible by the loop value");
  LaurentPoly out;
  for (std::size_t k = 0; k < q.size(); ++k) out.add_term(-q[k], static_cast<int>(k) + lo + 2);
  return out;
}

}  // namespace

LaurentPoly contraction_bracket(const PDCode& pd) {
  const int n = pd.crossing_count();
  if (n == 0) fail(ErrorKind::BadInput, "empty diagram");
  // A frontier state pairs the open arc labels through the smoothed part.
  using Pairing = std::vector<std::pair<int, int>>;  // sorted (label, partner)
  std::map<Pairing, LaurentPoly> states{{Pairing{}, LaurentPoly::constant(1)}};
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  std::vector<int> seen(static_cast<std::size_t>(pd.arc_count()) + 1, 0);
  const LaurentPoly delta = LaurentPoly::delta();

  auto join = [&](std::map<int, int>& m, int x, int y) -> int {
    if (x == y) return 1;  // arc leaving and re-entering this crossing
    auto ix = m.find(x);
    auto iy = m.find(y);
    if (ix != m.end() && ix->second == y) {
      m.erase(x);
      m.erase(y);
      return 1;
    }
    int left = x;
    int right = y;
    if (ix != m.end()) {
      left = ix->second;
      m.erase(ix);
      m.erase(left);
    }
    iy = m.find(y);
    if (iy != m.end()) {
      right = iy->second;
      m.erase(iy);
      m.erase(right);
    }
    m[left] = right;
    m[right] = left;
    return 0;
  };

  for (int step = 0; step < n; ++step) {
    // Next crossing: most arcs shared with the frontier, lowest index on ties.
    int best = -1;
    int best_score = -1;
    for (int x = 0; x < n; ++x) {
      if (done[static_cast<std::size_t>(x)]) continue;
      int score = 0;
      for (int label : pd[x]) score += seen[static_cast<std::size_t>(label)] > 0 ? 1 : 0;
      if (score > best_score) {
        best = x;
        best_score = score;
      }
    }
    done[static_cast<std::size_t>(best)] = 1;
    const ArcTuple& t = pd[best];

    std::map<Pairing, LaurentPoly> next;
    for (const auto& [pairing, poly] : states) {
      for (Smoothing s : {Smoothing::A, Smoothing::B}) {
        std::map<int, int> m(pairing.begin(), pairing.end());
        int loops = 0;
        if (s == Smoothing::A) {
          loops += join(m, t[0], t[1]);
          loops += join(m, t[2], t[3]);
        } else {
          loops += join(m, t[0], t[3]);
          loops += join(m, t[1], t[2]);
        }
        LaurentPoly term = poly.shifted(s == Smoothing::A ? 1 : -1);
        for (int i = 0; i < loops; ++i) term *= delta;
        next[Pairing(m.begin(), m.end())] += term;
      }
    }
    for (int label : t) ++seen[static_cast<std::size_t>(label)];
    states.clear();
    for (auto& [k, v] : next)
      if (!v.is_zero()) states.emplace(k, std::move(v));
  }
  if (states.size() > 1 || (states.size() == 1 && !states.begin()->first.empty()))
    fail(ErrorKind::Internal, "open arcs remain after contraction");
  if (states.empty()) return LaurentPoly{};
  return divide_by_delta(states.begin()->second);
}

// ---------------------------------------------------------------------------
// Topology of the diagram

int component_count(const PDCode& pd) {
  UnionFind uf(pd.arc_count() + 1);
  int parts = pd.arc_count();
  for (const auto& t : pd.crossings()) {
    if (uf.unite(t[0], t[2])) --parts;
    if (uf.unite(t[1], t[3])) --parts;
  }
  return parts;
}

bool is_connected(const PDCode& pd) { return PlanarMap(pd).connected(); }

std::vector<int> crossing_signs(const PDCode& pd) {
  if (pd.has_signs()) return pd.signs();
  if (component_count(pd) != 1) {
    fail(ErrorKind::BadInput,
         "orientation is ambiguous for a multi-component PD; supply signs with S[+,-,...]");
  }
  const int n_arcs = pd.arc_count();
  auto succ = [n_arcs](int k) { return k % n_arcs + 1; };
  std::vector<int> signs;
  signs.reserve(pd.crossings().size());
  for (const auto& [a, b, c, d] : pd.crossings()) {
    if (c != succ(a)) {
      fail(ErrorKind::BadInput, "arc labels are not consecutive along the knot (under-strand " +
                                    std::to_string(a) + " -> " + std::to_string(c) +
                                    "); supply signs with S[...]");
    }
    const bool d_to_b = (b == succ(d));
    const bool b_to_d = (d == succ(b));
    if (d_to_b && b_to_d) {
      // Two-arc diagram: the over-strand enters on the arc that is not the
      // under-strand's incoming arc.
      signs.push_back(d != a ? 1 : -1);
    } else if (d_to_b) {
      signs.push_back(1);
    } else if (b_to_d) {
      signs.push_back(-1);
    } else {
      fail(ErrorKind::BadInput, "arc labels are not consecutive along the over-strand " +
                                    std::to_string(b) + "/" + std::to_string(d) +
                                    "; supply signs with S[...]");
    }
  }
  return signs;
}

int writhe(const PDCode& pd) {
  const auto signs = crossing_signs(pd);
  return std::accumulate(signs.begin(), signs.end(), 0);
}

PDCode mirror(const PDCode& pd) {
  std::vector<ArcTuple> out;
  out.reserve(pd.crossings().size());
  for (const auto& [a, b, c, d] : pd.crossings()) out.push_back({a, d, c, b});
  std::vector<int> signs = pd.signs();
  for (int& s : signs) s = -s;
  return PDCode::from_tuples(std::move(out), std::move(signs));
}

// ---------------------------------------------------------------------------
// Oriented diagram builder: crossings with four counterclockwise slots, one
// slot pair marked as the under-strand, and optional orientation hints.

namespace {

class DiagramBuilder {
 public:
  struct Crossing {
    std::array<Dart, 4> link{Dart{-1, -1}, Dart{-1, -1}, Dart{-1, -1}, Dart{-1, -1}};
    bool under02 = true;
    // Entering slot per strand (index 0: under, 1: over); -1 when unknown.
    std::array<int, 2> hint{-1, -1};
  };

  struct Emitted {
    PDCode pd;
    std::vector<int> tuple_start;  // builder slot of each tuple's position 0
  };

  int add_crossing(bool under02) {
    crossings_.push_back(Crossing{});
    crossings_.back().under02 = under02;
    return static_cast<int>(crossings_.size()) - 1;
  }

  void connect(Dart a, Dart b) {
    at(a) = b;
    at(b) = a;
  }

  Dart& at(Dart d) {
    return crossings_[static_cast<std::size_t>(d.crossing)].link[static_cast<std::size_t>(d.pos)];
  }
  Crossing& crossing(int x) { return crossings_[static_cast<std::size_t>(x)]; }
  int size() const { return static_cast<int>(crossings_.size()); }

  static DiagramBuilder from_pd(const PDCode& pd) {
    DiagramBuilder b;
    const PlanarMap map(pd);
    std::vector<int> signs;
    if (pd.has_signs()) {
      signs = pd.signs();
    } else if (component_count(pd) == 1) {
      try {
        signs = crossing_signs(pd);
      } catch (const Error&) {
        signs.clear();
      }
    }
    for (int x = 0; x < pd.crossing_count(); ++x) {
      const int id = b.add_crossing(true);
      auto& c = b.crossing(id);
      for (int p = 0; p < 4; ++p) c.link[static_cast<std::size_t>(p)] = map.opposite(Dart{x, p});
      c.hint[0] = 0;
      if (!signs.empty()) c.hint[1] = signs[static_cast<std::size_t>(x)] > 0 ? 3 : 1;
    }
    return b;
  }

  Emitted emit() const {
    const int n = size();
    if (n == 0) fail(ErrorKind::Internal, "empty diagram");
    for (const auto& c : crossings_)
      for (const auto& l : c.link)
        if (l.crossing < 0) fail(ErrorKind::Internal, "diagram builder has an unconnected slot");

    auto strand_of = [&](Dart d) {
      const bool under = ((d.pos % 2) == 0) == crossings_[static_cast<std::size_t>(d.crossing)].under02;
      return under ? 0 : 1;
    };
    auto link = [&](Dart d) { return crossings_[static_cast<std::size_t>(d.crossing)].link[static_cast<std::size_t>(d.pos)]; };

    std::vector<int> label(static_cast<std::size_t>(4 * n), 0);
    std::vector<std::array<int, 2>> entering(static_cast<std::size_t>(n), {-1, -1});
    int next_label = 1;
    int components = 0;
    for (int start = 0; start < 4 * n; ++start) {
      if (label[static_cast<std::size_t>(start)] != 0) continue;
      ++components;
      // Walk the strand exiting through `start`; collect entering darts.
      std::vector<std::pair<Dart, Dart>> edges;  // (exit, enter)
      Dart exit{start / 4, start % 4};
      do {
        const Dart enter = link(exit);
        edges.emplace_back(exit, enter);
        exit = Dart{enter.crossing, (enter.pos + 2) % 4};
      } while (exit.id() != start);
      int agree = 0;
      int disagree = 0;
      for (const auto& [ex, en] : edges) {
        const int hint = crossings_[static_cast<std::size_t>(en.crossing)].hint[static_cast<std::size_t>(strand_of(en))];
        if (hint < 0) continue;
        if (hint == en.pos) ++agree;
        else ++disagree;
      }
      if (agree && disagree) fail(ErrorKind::BadInput, "inconsistent strand orientation in PD code");
      if (disagree) {
        std::reverse(edges.begin(), edges.end());
        for (auto& [ex, en] : edges) std::swap(ex, en);
      }
      for (const auto& [ex, en] : edges) {
        label[static_cast<std::size_t>(ex.id())] = next_label;
        label[static_cast<std::size_t>(en.id())] = next_label;
        entering[static_cast<std::size_t>(en.crossing)][static_cast<std::size_t>(strand_of(en))] = en.pos;
        ++next_label;
      }
    }

    Emitted out;
    std::vector<ArcTuple> tuples;
    std::vector<int> signs;
    for (int x = 0; x < n; ++x) {
      const int u = entering[static_cast<std::size_t>(x)][0];
      const int o = entering[static_cast<std::size_t>(x)][1];
      ArcTuple t{};
      for (int p = 0; p < 4; ++p) t[static_cast<std::size_t>(p)] = label[static_cast<std::size_t>(4 * x + (u + p) % 4)];
      tuples.push_back(t);
      signs.push_back(o == (u + 3) % 4 ? 1 : -1);
      out.tuple_start.push_back(u);
    }
    if (components == 1) signs.clear();
    out.pd = PDCode::from_tuples(std::move(tuples), std::move(signs));
    return out;
  }

 private:
  std::vector<Crossing> crossings_;
};

// Slots of a generated crossing, counterclockwise.
constexpr int kSW = 0;
constexpr int kSE = 1;
constexpr int kNE = 2;
constexpr int kNW = 3;

// Under-strand choice for the positive pretzel columns; fixed so that the
// all-A state of K(p..., -q...) has n - m + sum(q) circles.
constexpr bool kPositiveColumnUnder02 = false;

// A vertical twist column; returns {top-left, top-right, bottom-left, bottom-right}.
std::array<Dart, 4> add_column(DiagramBuilder& b, int crossings, bool under02) {
  int below = -1;
  int bottom = -1;
  for (int k = 0; k < crossings; ++k) {
    const int x = b.add_crossing(under02);
    if (below < 0) {
      bottom = x;
    } else {
      b.connect(Dart{below, kNW}, Dart{x, kSW});
      b.connect(Dart{below, kNE}, Dart{x, kSE});
    }
    below = x;
  }
  return {Dart{below, kNW}, Dart{below, kNE}, Dart{bottom, kSW}, Dart{bottom, kSE}};
}

}  // namespace

PDCode pretzel(std::span<const int> p, std::span<const int> q) {
  if (p.empty() && q.empty()) fail(ErrorKind::BadInput, "pretzel needs at least one column");
  for (int v : p) if (v < 1) fail(ErrorKind::BadInput, "pretzel parameters must be >= 1");
  for (int v : q) if (v < 1) fail(ErrorKind::BadInput, "pretzel parameters must be >= 1");
  DiagramBuilder b;
  std::vector<std::array<Dart, 4>> columns;
  for (int v : p) columns.push_back(add_column(b, v, kPositiveColumnUnder02));
  for (int v : q) columns.push_back(add_column(b, v, !kPositiveColumnUnder02));
  for (std::size_t j = 0; j + 1 < columns.size(); ++j) {
    b.connect(columns[j][1], columns[j + 1][0]);
    b.connect(columns[j][3], columns[j + 1][2]);
  }
  b.connect(columns.front()[0], columns.back()[1]);
  b.connect(columns.front()[2], columns.back()[3]);
  return b.emit().pd;
}

PDCode twist(int p, int q) {
  if (p < 1 || q < 1) fail(ErrorKind::BadInput, "twist parameters must be >= 1");
  const std::vector<int> clasp(static_cast<std::size_t>(p), 1);
  const std::vector<int> column{q};
  return pretzel(column, clasp);
}

PDCode braid_closure(int strands, std::span<const int> word) {
  if (strands < 2) fail(ErrorKind::BadInput, "braid closure needs at least 2 strands");
  if (word.empty()) fail(ErrorKind::BadInput, "empty braid word");
  DiagramBuilder b;
  std::vector<Dart> first(static_cast<std::size_t>(strands), Dart{-1, -1});
  std::vector<Dart> open(static_cast<std::size_t>(strands), Dart{-1, -1});
  auto attach = [&](int position, Dart bottom_slot, Dart top_slot) {
    auto& o = open[static_cast<std::size_t>(position)];
    if (o.crossing < 0) first[static_cast<std::size_t>(position)] = bottom_slot;
    else b.connect(o, bottom_slot);
    o = top_slot;
  };
  for (int letter : word) {
    const int i = std::abs(letter);
    if (i < 1 || i >= strands) fail(ErrorKind::BadInput, "braid letter " + std::to_string(letter) + " out of range");
    // Positive letters put the SW->NE strand over.
    const int x = b.add_crossing(letter < 0);
    attach(i - 1, Dart{x, kSW}, Dart{x, kNW});
    attach(i, Dart{x, kSE}, Dart{x, kNE});
  }
  for (int s = 0; s < strands; ++s) {
    if (open[static_cast<std::size_t>(s)].crossing < 0)
      fail(ErrorKind::BadInput, "braid strand " + std::to_string(s + 1) + " has no crossing; closure is split");
    b.connect(open[static_cast<std::size_t>(s)], first[static_cast<std::size_t>(s)]);
  }
  return b.emit().pd;
}

PDCode reduce_to_one_vertex(const PDCode& pd) {
  if (!is_connected(pd)) fail(ErrorKind::BadInput, "reduction requires a connected diagram");
  const State all_a = State::all(pd.crossing_count(), Smoothing::A);
  if (smooth_state(pd, all_a).count == 1) return pd;

  DiagramBuilder builder = DiagramBuilder::from_pd(pd);
  auto emitted = builder.emit();
  while (true) {
    const PDCode& cur = emitted.pd;
    const StateCircles circles = smooth_state(cur, State::all(cur.crossing_count(), Smoothing::A));
    if (circles.count == 1) return cur;
    int site = -1;
    for (int x = 0; x < cur.crossing_count() && site < 0; ++x) {
      if (circles.circle_of_endpoint[static_cast<std::size_t>(2 * x)] !=
          circles.circle_of_endpoint[static_cast<std::size_t>(2 * x + 1)])
        site = x;
    }
    if (site < 0) fail(ErrorKind::Internal, "no crossing joins two all-A circles");

    // Positions 1 and 2 of the tuple lie on the two different A-turns and
    // bound a common region; push one strand across the other there.
    const int u = emitted.tuple_start[static_cast<std::size_t>(site)];
    const Dart beta{site, (u + 1) % 4};
    const Dart gamma{site, (u + 2) % 4};
    bool merged = false;
    for (bool gamma_under : {true, false}) {
      DiagramBuilder trial = builder;
      const Dart beta_far = trial.at(beta);
      const Dart gamma_far = trial.at(gamma);
      const int y = trial.add_crossing(gamma_under);
      const int z = trial.add_crossing(gamma_under);
      // y: [gamma to site, beta to site, gamma to z, beta to z]
      // z: [gamma to y, beta onward, gamma onward, beta to y]
      trial.connect(beta, Dart{y, 1});
      trial.connect(gamma, Dart{y, 0});
      trial.connect(Dart{y, 2}, Dart{z, 0});
      trial.connect(Dart{y, 3}, Dart{z, 3});
      trial.connect(Dart{z, 1}, beta_far);
      trial.connect(Dart{z, 2}, gamma_far);
      auto next = trial.emit();
      const int count = smooth_state(next.pd, State::all(next.pd.crossing_count(), Smoothing::A)).count;
      if (count == circles.count - 1) {
        builder = std::move(trial);
        emitted = std::move(next);
        merged = true;
        break;
      }
    }
    if (!merged) fail(ErrorKind::Internal, "Reidemeister II insertion failed to merge all-A circles");
  }
}

// ---------------------------------------------------------------------------
// Knot table

KnotTable KnotTable::parse(std::string_view text) {
  KnotTable table;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto sep = line.find_first_of(" \t", b);
    if (sep == std::string::npos) fail(ErrorKind::BadInput, "knot table line " + std::to_string(line_no) + " has no PD code");
    std::string name = line.substr(b, sep - b);
    std::string code = line.substr(sep + 1);
    parse_pd(code);  // validate eagerly
    table.entries_[name] = code;
  }
  return table;
}

KnotTable KnotTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadInput, "cannot open knot table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

KnotTable KnotTable::bundled() { return load(default_knot_table_path()); }

PDCode KnotTable::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) fail(ErrorKind::BadInput, "unknown knot table entry '" + name + "'");
  return parse_pd(it->second);
}

std::string default_knot_table_path() {
  if (const char* env = std::getenv("KD_KNOT_TABLE"); env != nullptr && *env != '\0') return env;
  return KD_DEFAULT_KNOT_TABLE;
}

}  // namespace kd
