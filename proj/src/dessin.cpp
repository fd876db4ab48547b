#include "kd/dessin.hpp"

#include "kd/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

namespace kd {

Counts Counts::from_vefk(int v, int e, int f, int k) {
  const int twice_g = 2 * k - v + e - f;
  if (twice_g < 0 || twice_g % 2 != 0) {
    fail(ErrorKind::Internal, "Euler relation violated: v=" + std::to_string(v) + " e=" +
                                  std::to_string(e) + " f=" + std::to_string(f) +
                                  " k=" + std::to_string(k));
  }
  Counts c;
  c.v = v;
  c.e = e;
  c.f = f;
  c.k = k;
  c.g = twice_g / 2;
  c.n = e - v + k;
  return c;
}

// ---------------------------------------------------------------------------
// Dessin

Dessin Dessin::from_rotation(std::vector<std::vector<int>> rotation,
                             std::vector<std::pair<int, int>> edges, std::vector<int> labels) {
  const int half = 2 * static_cast<int>(edges.size());
  if (!labels.empty() && labels.size() != edges.size())
    fail(ErrorKind::BadInput, "edge label count does not match edge count");
  Dessin d;
  d.vertex_of_.assign(static_cast<std::size_t>(half), -1);
  d.position_of_.assign(static_cast<std::size_t>(half), -1);
  d.edge_of_.assign(static_cast<std::size_t>(half), -1);
  d.mate_.assign(static_cast<std::size_t>(half), -1);
  auto check_id = [half](int h) {
    if (h < 0 || h >= half)
      fail(ErrorKind::BadInput, "half-edge id " + std::to_string(h) + " outside 0.." + std::to_string(half - 1));
  };
  for (std::size_t v = 0; v < rotation.size(); ++v) {
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      const int h = rotation[v][i];
      check_id(h);
      if (d.vertex_of_[static_cast<std::size_t>(h)] >= 0)
        fail(ErrorKind::BadInput, "half-edge " + std::to_string(h) + " appears in two rotations");
      d.vertex_of_[static_cast<std::size_t>(h)] = static_cast<int>(v);
      d.position_of_[static_cast<std::size_t>(h)] = static_cast<int>(i);
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    check_id(a);
    check_id(b);
    if (a == b || d.edge_of_[static_cast<std::size_t>(a)] >= 0 || d.edge_of_[static_cast<std::size_t>(b)] >= 0)
      fail(ErrorKind::BadInput, "half-edges must be paired exactly once");
    d.edge_of_[static_cast<std::size_t>(a)] = d.edge_of_[static_cast<std::size_t>(b)] = static_cast<int>(e);
    d.mate_[static_cast<std::size_t>(a)] = b;
    d.mate_[static_cast<std::size_t>(b)] = a;
  }
  for (int h = 0; h < half; ++h) {
    if (d.vertex_of_[static_cast<std::size_t>(h)] < 0)
      fail(ErrorKind::BadInput, "half-edge " + std::to_string(h) + " missing from the rotation");
  }
  d.rotation_ = std::move(rotation);
  d.edges_ = std::move(edges);
  d.labels_ = std::move(labels);
  return d;
}

Dessin Dessin::parse(std::string_view text) {
  auto bad = [](const std::string& why) { fail(ErrorKind::BadInput, "dessin parse error: " + why); };
  const auto vpos = text.find("V:");
  const auto epos = text.find("E:");
  if (vpos == std::string_view::npos || epos == std::string_view::npos || epos < vpos)
    bad("expected `V: (...) ... E: (a,b) ...`");
  auto groups = [&](std::string_view part) {
    std::vector<std::vector<int>> out;
    std::size_t pos = 0;
    while (true) {
      const auto open = part.find('(', pos);
      if (open == std::string_view::npos) break;
      const auto close = part.find(')', open);
      if (close == std::string_view::npos) bad("unbalanced parenthesis");
      std::string body(part.substr(open + 1, close - open - 1));
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream in(body);
      std::vector<int> ids;
      for (std::string tok; in >> tok;) {
        if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          bad("half-edge id '" + tok + "' is not a positive integer");
        const int id = std::stoi(tok);
        if (id < 1) bad("half-edge ids are 1-based");
        ids.push_back(id - 1);
      }
      out.push_back(std::move(ids));
      pos = close + 1;
    }
    return out;
  };
  auto rotation = groups(text.substr(vpos + 2, epos - vpos - 2));
  std::vector<std::pair<int, int>> edges;
  for (const auto& g : groups(text.substr(epos + 2))) {
    if (g.size() != 2) bad("edges are pairs `(a,b)`");
    edges.emplace_back(g[0], g[1]);
  }
  if (rotation.empty()) bad("a dessin needs at least one vertex");
  return from_rotation(std::move(rotation), std::move(edges));
}

std::string Dessin::to_string() const {
  std::ostringstream os;
  os << "V:";
  for (const auto& r : rotation_) {
    os << " (";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i] + 1;
    os << ')';
  }
  os << " E:";
  for (const auto& [a, b] : edges_) os << " (" << a + 1 << ',' << b + 1 << ')';
  return os.str();
}

int Dessin::next_at_vertex(int h) const {
  const auto& r = rotation_[static_cast<std::size_t>(vertex_of(h))];
  return r[(static_cast<std::size_t>(position_of(h)) + 1) % r.size()];
}

bool Dessin::is_loop(int edge) const {
  const auto [a, b] = edges_[static_cast<std::size_t>(edge)];
  return vertex_of(a) == vertex_of(b);
}

bool Dessin::has_loop() const {
  for (int e = 0; e < edge_count(); ++e)
    if (is_loop(e)) return true;
  return false;
}

EdgeSet Dessin::all_edges() const {
  if (edge_count() > 64) fail(ErrorKind::CapExceeded, "edge sets hold at most 64 edges");
  return edge_count() == 64 ? ~EdgeSet{0} : ((EdgeSet{1} << edge_count()) - 1);
}

// ---------------------------------------------------------------------------
// Counting

FaceTracer::FaceTracer(const Dessin& d)
    : v_(d.vertex_count()),
      e_(d.edge_count()),
      edge_of_(static_cast<std::size_t>(d.half_edge_count())),
      mate_(static_cast<std::size_t>(d.half_edge_count())),
      succ_(static_cast<std::size_t>(d.half_edge_count())),
      seen_(static_cast<std::size_t>(d.half_edge_count()), 0),
      parent_(static_cast<std::size_t>(d.vertex_count())) {
  for (const auto& rot : d.rotation()) {
    rot_start_.push_back(static_cast<int>(rot_.size()));
    rot_.insert(rot_.end(), rot.begin(), rot.end());
  }
  rot_start_.push_back(static_cast<int>(rot_.size()));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    edge_of_[static_cast<std::size_t>(h)] = d.edge_of(h);
    mate_[static_cast<std::size_t>(h)] = d.mate(h);
  }
  for (const auto& [a, b] : d.edges()) ends_.emplace_back(d.vertex_of(a), d.vertex_of(b));
}

int FaceTracer::faces(EdgeSet edges) {
  const int* edge_of = edge_of_.data();
  const int* mate = mate_.data();
  int* succ = succ_.data();
  auto active = [&](int h) { return ((edges >> edge_of[h]) & 1u) != 0; };
  int faces = 0;
  for (int v = 0; v < v_; ++v) {
    int first = -1;
    int prev = -1;
    for (int i = rot_start_[static_cast<std::size_t>(v)]; i < rot_start_[static_cast<std::size_t>(v) + 1]; ++i) {
      const int h = rot_[static_cast<std::size_t>(i)];
      if (!active(h)) continue;
      if (prev >= 0) succ[prev] = h;
      else first = h;
      prev = h;
    }
    if (prev >= 0) succ[prev] = first;
    else ++faces;  // isolated vertex bounds one face
  }
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  std::uint32_t* seen = seen_.data();
  const int half_edges = 2 * e_;
  for (int h = 0; h < half_edges; ++h) {
    if (seen[h] == stamp_ || !active(h)) continue;
    ++faces;
    for (int cur = h; seen[cur] != stamp_; cur = succ[mate[cur]]) seen[cur] = stamp_;
  }
  return faces;
}

int FaceTracer::components(EdgeSet edges) {
  if (v_ == 1) return 1;
  int* parent = parent_.data();
  std::iota(parent_.begin(), parent_.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int parts = v_;
  for (EdgeSet rest = edges; rest != 0; rest &= rest - 1) {
    const auto [a, b] = ends_[static_cast<std::size_t>(std::countr_zero(rest))];
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) {
      parent[rb] = ra;
      --parts;
    }
  }
  return parts;
}

Counts FaceTracer::counts(EdgeSet edges) {
  return Counts::from_vefk(v_, std::popcount(edges), faces(edges), components(edges));
}

Counts dessin_counts(const Dessin& d, std::optional<EdgeSet> sub) {
  const EdgeSet edges = sub.value_or(d.all_edges());
  if ((edges & ~d.all_edges()) != 0) fail(ErrorKind::BadInput, "edge set names edges outside the dessin");
  return FaceTracer(d).counts(edges);
}

// ---------------------------------------------------------------------------
// Dessin of a state

Dessin build_dessin(const PDCode& pd, const State& s) {
  const PlanarMap map(pd);
  if (!map.connected()) fail(ErrorKind::BadInput, "dessin construction requires a connected diagram");
  if (!map.planar()) fail(ErrorKind::BadInput, "PD code does not describe a planar diagram");
  const int n = pd.crossing_count();
  const StateCircles circles = smooth_state(pd, s);

  // Complement regions of the circles: diagram faces glued through the
  // channel each smoothing opens.
  std::vector<int> region(static_cast<std::size_t>(map.face_count()));
  std::iota(region.begin(), region.end(), 0);
  auto find = [&](int x) {
    while (region[static_cast<std::size_t>(x)] != x) x = region[static_cast<std::size_t>(x)] =
        region[static_cast<std::size_t>(region[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int x = 0; x < n; ++x) {
    const int c = s[x] == Smoothing::A ? 1 : 0;
    const int a = find(map.face_of_corner(x, c));
    const int b = find(map.face_of_corner(x, c + 2));
    if (a != b) region[static_cast<std::size_t>(b)] = a;
  }

  // Left/right regions of each circle along its recorded traversal, read off
  // its first turn: entering p and leaving q = p+1 keeps corner p on the
  // right; q = p-1 keeps corner q on the left.
  std::vector<std::pair<int, int>> sides(static_cast<std::size_t>(circles.count));  // (left, right)
  for (int c = 0; c < circles.count; ++c) {
    const int endpoint = circles.cyclic_orders[static_cast<std::size_t>(c)][0];
    const int x = endpoint / 2;
    const int p = circles.entry_positions[static_cast<std::size_t>(c)][0];
    const int q = smoothing_partner(s[x], p);
    const bool turns_ccw = q == (p + 1) % 4;
    const int cut = turns_ccw ? p : q;
    const int cut_region = find(map.face_of_corner(x, cut));
    const int channel_region = find(map.face_of_corner(x, (cut + 1) % 4));
    sides[static_cast<std::size_t>(c)] = turns_ccw ? std::pair{channel_region, cut_region}
                                                    : std::pair{cut_region, channel_region};
  }

  // Nesting depth by breadth-first search over regions from the outer face.
  std::vector<std::vector<int>> adjacent(region.size());
  for (const auto& [l, r] : sides) {
    adjacent[static_cast<std::size_t>(l)].push_back(r);
    adjacent[static_cast<std::size_t>(r)].push_back(l);
  }
  std::vector<int> depth(region.size(), -1);
  const int outer = find(map.face_of_corner(0, 0));
  std::deque<int> queue{outer};
  depth[static_cast<std::size_t>(outer)] = 0;
  while (!queue.empty()) {
    const int r = queue.front();
    queue.pop_front();
    for (int next : adjacent[static_cast<std::size_t>(r)]) {
      if (depth[static_cast<std::size_t>(next)] >= 0) continue;
      depth[static_cast<std::size_t>(next)] = depth[static_cast<std::size_t>(r)] + 1;
      queue.push_back(next);
    }
  }

  std::vector<std::vector<int>> rotation(static_cast<std::size_t>(circles.count));
  for (int c = 0; c < circles.count; ++c) {
    const auto [left, right] = sides[static_cast<std::size_t>(c)];
    const int dl = depth[static_cast<std::size_t>(left)];
    const int dr = depth[static_cast<std::size_t>(right)];
    if (dl < 0 || dr < 0 || std::abs(dl - dr) != 1)
      fail(ErrorKind::Internal, "state circles do not nest as a tree");
    const int nesting = std::min(dl, dr);
    const bool traversal_ccw = dl > dr;  // interior on the left
    const bool want_ccw = nesting % 2 == 0;
    auto order = circles.cyclic_orders[static_cast<std::size_t>(c)];
    if (traversal_ccw != want_ccw) std::reverse(order.begin(), order.end());
    rotation[static_cast<std::size_t>(c)] = std::move(order);
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels;
  for (int x = 0; x < n; ++x) {
    edges.emplace_back(2 * x, 2 * x + 1);
    labels.push_back(x);
  }
  return Dessin::from_rotation(std::move(rotation), std::move(edges), std::move(labels));
}

Dessin dual(const Dessin& d) {
  FaceTracer tracer(d);
  if (tracer.components(d.all_edges()) != 1) fail(ErrorKind::Precondition, "dual requires a connected dessin");
  if (d.edge_count() == 0) return d;
  std::vector<std::vector<int>> rotation;
  std::vector<char> seen(static_cast<std::size_t>(d.half_edge_count()), 0);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (seen[static_cast<std::size_t>(h)]) continue;
    rotation.emplace_back();
    for (int cur = h; !seen[static_cast<std::size_t>(cur)]; cur = d.next_at_vertex(d.mate(cur))) {
      seen[static_cast<std::size_t>(cur)] = 1;
      rotation.back().push_back(cur);
    }
  }
  return Dessin::from_rotation(std::move(rotation), d.edges(), d.labels());
}

// ---------------------------------------------------------------------------
// Scans

void check_scan_cap(const Dessin& d, const ScanOptions& opts) {
  if (d.edge_count() > opts.cap || d.edge_count() > 62) {
    fail(ErrorKind::CapExceeded, "sub-dessin scan over " + std::to_string(d.edge_count()) +
                                     " edges exceeds the cap of " + std::to_string(opts.cap));
  }
}

void scan_subdessins(const Dessin& d, const std::function<void(EdgeSet, const Counts&)>& visitor,
                     const ScanOptions& opts) {
  check_scan_cap(d, opts);
  FaceTracer tracer(d);
  const std::uint64_t total = std::uint64_t{1} << d.edge_count();
  for (std::uint64_t mask = 0; mask < total; ++mask) visitor(mask, tracer.counts(mask));
}

QuasiTreeCounts quasi_tree_counts(const Dessin& d, const ScanOptions& opts) {
  const Counts whole = dessin_counts(d);
  if (whole.k != 1) fail(ErrorKind::Precondition, "quasi-tree counts require a connected dessin");
  struct Tally {
    std::vector<std::int64_t> s;
    std::int64_t inconsistent = 0;
  };
  const Tally identity{std::vector<std::int64_t>(static_cast<std::size_t>(whole.g) + 1, 0), 0};
  const Tally tally = reduce_subdessins<Tally>(
      d, opts, identity,
      [](Tally& acc, EdgeSet, const Counts& c) {
        const bool connected = c.k == 1;
        const bool one_face = c.f == 1;
        const bool edge_count = c.e == c.v - 1 + 2 * c.g;
        const int held = int{connected} + int{one_face} + int{edge_count};
        if (held == 2) ++acc.inconsistent;
        if (held == 3) ++acc.s[static_cast<std::size_t>(c.g)];
      },
      [](Tally& into, const Tally& part) {
        for (std::size_t j = 0; j < into.s.size(); ++j) into.s[j] += part.s[j];
        into.inconsistent += part.inconsistent;
      });
  if (tally.inconsistent != 0)
    fail(ErrorKind::Internal, "quasi-tree conditions disagree on " + std::to_string(tally.inconsistent) + " sub-dessins");
  return QuasiTreeCounts{tally.s};
}

int mixed_state_face_count(const PDCode& pd, EdgeSet edges) { return count_state_circles(pd, edges); }

// ---------------------------------------------------------------------------
// Weighted dessins

int WeightedDessin::total_edges() const { return std::accumulate(weight.begin(), weight.end(), 0); }

WeightedDessin contract_parallel(const Dessin& d) {
  if (d.vertex_count() != 1) fail(ErrorKind::Precondition, "contract_parallel requires a one-vertex dessin");
  const auto& rot = d.rotation()[0];
  const int len = static_cast<int>(rot.size());
  std::vector<int> parent(static_cast<std::size_t>(d.edge_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  // x y ... y' x': neighbours at i, i+1 whose mates sit at j+1, j.
  for (int i = 0; i < len; ++i) {
    const int x = rot[static_cast<std::size_t>(i)];
    const int y = rot[static_cast<std::size_t>((i + 1) % len)];
    if (d.edge_of(x) == d.edge_of(y)) continue;
    const int px = d.position_of(d.mate(x));
    const int py = d.position_of(d.mate(y));
    if (px == (py + 1) % len) {
      const int a = find(d.edge_of(x));
      const int b = find(d.edge_of(y));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<int> base_index(static_cast<std::size_t>(d.edge_count()), -1);
  WeightedDessin out;
  for (int e = 0; e < d.edge_count(); ++e) {
    const int root = find(e);
    if (base_index[static_cast<std::size_t>(root)] < 0) {
      base_index[static_cast<std::size_t>(root)] = static_cast<int>(out.weight.size());
      out.weight.push_back(0);
      out.members.emplace_back();
    }
    const int b = base_index[static_cast<std::size_t>(root)];
    ++out.weight[static_cast<std::size_t>(b)];
    out.members[static_cast<std::size_t>(b)].push_back(e);
  }
  // Keep each class's representative (its lowest edge); renumber half-edges
  // in rotation order.
  std::vector<int> new_id(static_cast<std::size_t>(d.half_edge_count()), -1);
  std::vector<int> rotation;
  for (int h : rot) {
    const int e = d.edge_of(h);
    if (find(e) != e) continue;
    new_id[static_cast<std::size_t>(h)] = static_cast<int>(rotation.size());
    rotation.push_back(static_cast<int>(rotation.size()));
  }
  std::vector<std::pair<int, int>> edges(out.weight.size());
  std::vector<int> labels(out.weight.size());
  for (int e = 0; e < d.edge_count(); ++e) {
    if (find(e) != e) continue;
    const int b = base_index[static_cast<std::size_t>(e)];
    const auto [h1, h2] = d.edges()[static_cast<std::size_t>(e)];
    edges[static_cast<std::size_t>(b)] = {new_id[static_cast<std::size_t>(h1)], new_id[static_cast<std::size_t>(h2)]};
    labels[static_cast<std::size_t>(b)] = d.labels().empty() ? e : d.labels()[static_cast<std::size_t>(e)];
  }
  out.base = Dessin::from_rotation({rotation}, std::move(edges), std::move(labels));
  if (dessin_counts(out.base).g != dessin_counts(d).g)
    fail(ErrorKind::Internal, "parallel contraction changed the genus");
  return out;
}

}  // namespace kd
