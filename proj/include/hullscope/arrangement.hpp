#pragma once

// Arrangement of disc boundaries on the sphere: vertices are pairwise
// crossings, edges are boundary arcs between consecutive crossings, faces are
// traced with the face on the left of each half-edge. On top of it: overlap /
// crossway components, hubs, links and coves, holes and their label sequences.
//
// Half-edge h = 2 * edge + dir; dir 0 runs along the disc orientation (disc
// interior on the left), dir 1 runs against it.

#include "hullscope/curve.hpp"
#include "hullscope/discs.hpp"
#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hullscope {

using CrossingMap = std::map<std::pair<int, int>, std::vector<CrossingPoint>>;

struct ArrVertex {
  Vec3 position = Vec3::Zero();     // refined on the exact curves
  Vec3 local = Vec3::Zero();        // on the interpolants, used for areas
  std::array<int, 2> disc{};
  std::array<double, 2> phi{};      // interpolant parameters
  std::array<Vec3, 2> tangent{};
  double angle = 0.0;
  std::array<int, 4> out{};         // outgoing half-edges, counter-clockwise seen from outside
};

struct ArrEdge {
  int disc = 0;
  int v_start = -1;  // -1 for a loop edge (disc without crossings)
  int v_end = -1;
  double phi_start = 0.0;
  double phi_end = 0.0;  // unwrapped, > phi_start
  std::vector<Vec3> nodes;  // polyline from start to end (loop: last node equals first)
  double sliver = 0.0;      // forward sliver correction
};

struct ArrCycle {
  std::vector<int> half_edges;
  double left_area = 0.0;
  int component = 0;
  bool outer = false;  // left region contains the reference point
  int face = -1;
};

struct ArrFace {
  std::vector<int> cycles;  // main cycle first (none for the reference face with no discs)
  double area = 0.0;
  std::vector<int> cover;   // sorted disc indices containing the face
  bool reference = false;
};

struct Arrangement {
  std::vector<SphericalDisc> discs;
  std::vector<ArrVertex> vertices;
  std::vector<ArrEdge> edges;
  std::vector<int> next;         // per half-edge
  std::vector<int> cycle_of;     // per half-edge
  std::vector<ArrCycle> cycles;
  std::vector<ArrFace> faces;
  std::vector<int> graph_component;  // per disc
  int component_count = 0;
  Vec3 reference = Vec3::UnitZ();

  int half_edge_count() const { return static_cast<int>(2 * edges.size()); }
  int face_of(int h) const { return cycles[cycle_of[h]].face; }
  int disc_of(int h) const { return edges[h / 2].disc; }
  bool covers(int face, int disc) const {
    return std::binary_search(faces[face].cover.begin(), faces[face].cover.end(), disc);
  }
  int loop_count() const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](const ArrEdge& e) { return e.v_start < 0; }));
  }
  /// V - E + F; equals 1 + components - loops, since a loop edge carries no vertex.
  int euler_characteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
  }
  double total_area() const {
    double a = 0.0;
    for (const auto& f : faces) a += f.area;
    return a;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

/// Direction of the chord p -> q in the tangent plane at p.
inline Vec3 chord_direction(const Vec3& p, const Vec3& q) {
  const Vec3 d = q - p;
  return (d - p * p.dot(d)).normalized();
}

/// Polyline of an arc of curve c over [phi_s, phi_e] (unwrapped), through the
/// interior samples, with extra nodes near crossing endpoints so that the first
/// and last chords stay within max_dev of the tangent.
inline std::vector<Vec3> arc_nodes(const ClosedCurve& c, double phi_s, double phi_e, const Vec3& start,
                                   const Vec3& end, double dev_start, double dev_end,
                                   std::vector<std::pair<double, double>>* params) {
  std::vector<double> phis{phi_s};
  const std::size_t n = c.size();
  const std::size_t k0 = c.segment_of(phi_s);
  const double base = phi_s - wrap_angle(phi_s);
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t k = (k0 + step) % n;
    double p = c.segment_start(k) + base;
    while (p <= phi_s) p += kTwoPi;
    if (p >= phi_e - 1e-12) break;
    if (p - phis.back() > 1e-12) phis.push_back(p);
  }
  phis.push_back(phi_e);

  const auto refine = [&](bool at_start, double max_dev) {
    if (!(max_dev > 0.0) || phis.size() < 2) return;
    const double anchor = at_start ? phis.front() : phis.back();
    const double neighbour = at_start ? phis[1] : phis[phis.size() - 2];
    const CurveSample a = c.interpolate(anchor);
    const Vec3 t = at_start ? a.tangent.normalized() : Vec3(-a.tangent.normalized());
    double d = neighbour - anchor;
    double chosen = d;
    for (int it = 0; it < 60; ++it) {
      const Vec3 q = c.interpolate(anchor + d).point;
      if (angle_between(chord_direction(a.point, q), t) <= max_dev) break;
      d *= 0.5;
      chosen = d;
    }
    if (chosen == neighbour - anchor) return;
    if (at_start) {
      phis.insert(phis.begin() + 1, anchor + chosen);
    } else {
      phis.insert(phis.end() - 1, anchor + chosen);
    }
  };
  refine(true, dev_start);
  refine(false, dev_end);

  std::vector<Vec3> nodes;
  nodes.reserve(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (i == 0) {
      nodes.push_back(start);
    } else if (i + 1 == phis.size()) {
      nodes.push_back(end);
    } else {
      nodes.push_back(c.interpolate(phis[i]).point);
    }
  }
  if (params) {
    params->clear();
    for (std::size_t i = 0; i + 1 < phis.size(); ++i) params->push_back({phis[i], phis[i + 1]});
  }
  return nodes;
}

inline double arc_sliver(const ClosedCurve& c, const std::vector<Vec3>& nodes,
                         const std::vector<std::pair<double, double>>& params) {
  double s = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double mid = 0.5 * (params[i].first + params[i].second);
    s += sliver_area(c, c.segment_of(mid), params[i].first, params[i].second, nodes[i], nodes[i + 1]);
  }
  return s;
}

inline void append_half_edge_nodes(const ArrEdge& e, int dir, std::vector<Vec3>& out) {
  const auto& n = e.nodes;
  if (dir == 0) {
    out.insert(out.end(), n.begin(), n.end() - 1);
  } else {
    for (std::size_t i = n.size() - 1; i >= 1; --i) out.push_back(n[i]);
  }
}

}  // namespace detail

inline std::vector<Vec3> cycle_polygon(const Arrangement& arr, int cycle) {
  std::vector<Vec3> pts;
  for (int h : arr.cycles[cycle].half_edges) detail::append_half_edge_nodes(arr.edges[h / 2], h % 2, pts);
  return pts;
}

inline bool cycle_left_contains(const Arrangement& arr, int cycle, const Vec3& x) {
  return polygon_contains(cycle_polygon(arr, cycle), x);
}

namespace detail {

inline Vec3 pick_reference(const std::vector<SphericalDisc>& discs) {
  Vec3 best = Vec3::UnitZ();
  double best_clearance = -1.0;
  constexpr std::size_t kCandidates = 97;
  for (std::size_t i = 0; i < kCandidates; ++i) {
    const Vec3 p = fibonacci_sphere(i, kCandidates);
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& d : discs) {
      const auto& c = d.boundary;
      for (std::size_t k = 0; k < c.size() && clearance > best_clearance; ++k) {
        clearance = std::min(clearance, chord_distance(c.point(k), c.point(k + 1), p) - c.sag(k));
      }
    }
    if (clearance > best_clearance) {
      best_clearance = clearance;
      best = p;
    }
  }
  return best;
}

}  // namespace detail

/// Builds the arrangement from discs in general position and their pairwise crossings.
inline Arrangement build_arrangement(const std::vector<SphericalDisc>& discs, const CrossingMap& crossings) {
  Arrangement arr;
  arr.discs = discs;
  const int n = static_cast<int>(discs.size());

  // Vertices, sorted lexicographically by position.
  for (const auto& [key, xs] : crossings) {
    for (const auto& x : xs) {
      if (!x.transversal) {
        throw Error(ErrorCode::degenerate_input, "non-transversal crossing between discs " +
                                                     std::to_string(key.first) + " and " + std::to_string(key.second));
      }
      ArrVertex v;
      v.position = x.position;
      v.disc = {key.first, key.second};
      v.phi = x.local_phi;
      v.local = discs[key.first].boundary.interpolate(x.local_phi[0]).point;
      v.tangent = {discs[key.first].boundary.interpolate(x.local_phi[0]).tangent,
                   discs[key.second].boundary.interpolate(x.local_phi[1]).tangent};
      v.angle = x.angle;
      arr.vertices.push_back(v);
    }
  }
  std::sort(arr.vertices.begin(), arr.vertices.end(),
            [](const ArrVertex& a, const ArrVertex& b) { return detail::lex_less(a.position, b.position); });

  // Crossings along each disc, by parameter.
  std::vector<std::vector<std::pair<double, int>>> along(n);
  for (int v = 0; v < static_cast<int>(arr.vertices.size()); ++v) {
    for (int s = 0; s < 2; ++s) along[arr.vertices[v].disc[s]].push_back({arr.vertices[v].phi[s], v});
  }

  // Edges: consecutive crossings on each disc; a loop when there are none.
  std::vector<std::vector<int>> edges_of(n);
  for (int i = 0; i < n; ++i) {
    auto& list = along[i];
    std::sort(list.begin(), list.end());
    const auto& curve = discs[i].boundary;
    if (list.empty()) {
      ArrEdge e;
      e.disc = i;
      e.phi_start = curve.segment_start(0);
      e.phi_end = e.phi_start + kTwoPi;
      for (const auto& s : curve.samples()) e.nodes.push_back(s.point);
      e.nodes.push_back(curve.point(0));
      for (std::size_t k = 0; k < curve.size(); ++k) {
        e.sliver += sliver_area(curve, k, curve.segment_start(k), curve.segment_end(k), curve.point(k),
                                curve.point(k + 1));
      }
      edges_of[i].push_back(static_cast<int>(arr.edges.size()));
      arr.edges.push_back(std::move(e));
      continue;
    }
    for (std::size_t m = 0; m < list.size(); ++m) {
      ArrEdge e;
      e.disc = i;
      e.v_start = list[m].second;
      e.v_end = list[(m + 1) % list.size()].second;
      e.phi_start = list[m].first;
      e.phi_end = list[(m + 1) % list.size()].first;
      if (m + 1 == list.size()) e.phi_end += kTwoPi;
      const auto& vs = arr.vertices[e.v_start];
      const auto& ve = arr.vertices[e.v_end];
      std::vector<std::pair<double, double>> params;
      e.nodes = detail::arc_nodes(curve, e.phi_start, e.phi_end, vs.local, ve.local, 0.25 * vs.angle,
                                  0.25 * ve.angle, &params);
      e.sliver = detail::arc_sliver(curve, e.nodes, params);
      edges_of[i].push_back(static_cast<int>(arr.edges.size()));
      arr.edges.push_back(std::move(e));
    }
  }

  // Rotation system at each vertex.
  const int H = arr.half_edge_count();
  for (int v = 0; v < static_cast<int>(arr.vertices.size()); ++v) {
    auto& vx = arr.vertices[v];
    std::vector<std::pair<int, Vec3>> outgoing;
    for (int s = 0; s < 2; ++s) {
      const int disc = vx.disc[s];
      for (int e : edges_of[disc]) {
        if (arr.edges[e].v_start == v) outgoing.push_back({2 * e, vx.tangent[s]});
        if (arr.edges[e].v_end == v) outgoing.push_back({2 * e + 1, -vx.tangent[s]});
      }
    }
    if (outgoing.size() != 4) {
      throw Error(ErrorCode::degenerate_input, "vertex " + std::to_string(v) + " has " +
                                                   std::to_string(outgoing.size()) + " outgoing arcs");
    }
    const Vec3 nrm = vx.local;
    const Vec3 e1 = (outgoing[0].second - nrm * nrm.dot(outgoing[0].second)).normalized();
    const Vec3 e2 = nrm.cross(e1);
    std::array<std::pair<double, int>, 4> ang;
    for (int k = 0; k < 4; ++k) {
      const Vec3& d = outgoing[k].second;
      ang[k] = {std::atan2(d.dot(e2), d.dot(e1)), outgoing[k].first};
    }
    std::sort(ang.begin(), ang.end());
    for (int k = 0; k < 4; ++k) vx.out[k] = ang[k].second;
  }

  // next(h): the outgoing half-edge immediately clockwise of twin(h) at head(h).
  arr.next.assign(H, -1);
  for (int h = 0; h < H; ++h) {
    const auto& e = arr.edges[h / 2];
    if (e.v_start < 0) {
      arr.next[h] = h;
      continue;
    }
    const int head = (h % 2 == 0) ? e.v_end : e.v_start;
    const int twin = h ^ 1;
    const auto& out = arr.vertices[head].out;
    const int pos = static_cast<int>(std::find(out.begin(), out.end(), twin) - out.begin());
    arr.next[h] = out[(pos + 3) % 4];
  }

  // Cycles.
  arr.cycle_of.assign(H, -1);
  for (int h = 0; h < H; ++h) {
    if (arr.cycle_of[h] >= 0) continue;
    ArrCycle c;
    int g = h;
    do {
      arr.cycle_of[g] = static_cast<int>(arr.cycles.size());
      c.half_edges.push_back(g);
      g = arr.next[g];
    } while (g != h);
    arr.cycles.push_back(std::move(c));
  }

  // Graph components, over discs linked by crossings.
  detail::UnionFind uf(n);
  for (const auto& v : arr.vertices) uf.unite(v.disc[0], v.disc[1]);
  std::map<int, int> comp_id;
  arr.graph_component.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (!comp_id.count(r)) comp_id[r] = static_cast<int>(comp_id.size());
    arr.graph_component[i] = comp_id[r];
  }
  arr.component_count = static_cast<int>(comp_id.size());

  // Cycle areas, and the outer cycle of each component (its left side holds the reference point).
  arr.reference = detail::pick_reference(discs);
  std::vector<int> outer_of(arr.component_count, -1);
  for (int c = 0; c < static_cast<int>(arr.cycles.size()); ++c) {
    auto& cy = arr.cycles[c];
    cy.component = arr.graph_component[arr.disc_of(cy.half_edges.front())];
    const auto poly = cycle_polygon(arr, c);
    double area = geodesic_polygon_area(poly);
    for (int h : cy.half_edges) area -= (h % 2 == 0 ? 1.0 : -1.0) * arr.edges[h / 2].sliver;
    cy.left_area = area;
    cy.outer = polygon_contains(poly, arr.reference);
    if (cy.outer) {
      if (outer_of[cy.component] >= 0) {
        throw Error(ErrorCode::degenerate_input, "two outer cycles in one arrangement component");
      }
      outer_of[cy.component] = c;
    }
  }
  for (int k = 0; k < arr.component_count; ++k) {
    if (outer_of[k] < 0) throw Error(ErrorCode::degenerate_input, "arrangement component without outer cycle");
  }

  // Nesting: each component sits in the smallest inner cycle of another component containing it.
  std::vector<int> parent_cycle(arr.component_count, -1);
  for (int k = 0; k < arr.component_count; ++k) {
    const auto& probe_edge = arr.edges[arr.cycles[outer_of[k]].half_edges.front() / 2];
    std::array<Vec3, 3> probes = {probe_edge.nodes[0], probe_edge.nodes[probe_edge.nodes.size() / 3],
                                  probe_edge.nodes[(2 * probe_edge.nodes.size()) / 3]};
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < static_cast<int>(arr.cycles.size()); ++c) {
      const auto& cy = arr.cycles[c];
      if (cy.outer || cy.component == k) continue;
      const auto poly = cycle_polygon(arr, c);
      int votes = 0;
      for (const auto& p : probes) votes += polygon_contains(poly, p) ? 1 : 0;
      if (votes >= 2 && cy.left_area < best) {
        best = cy.left_area;
        parent_cycle[k] = c;
      }
    }
  }

  // Faces: one per inner cycle, plus the reference face.
  const int reference_face = 0;
  arr.faces.push_back(ArrFace{});
  arr.faces[reference_face].reference = true;
  arr.faces[reference_face].area = kFourPi;
  for (int c = 0; c < static_cast<int>(arr.cycles.size()); ++c) {
    auto& cy = arr.cycles[c];
    if (cy.outer) continue;
    cy.face = static_cast<int>(arr.faces.size());
    ArrFace f;
    f.cycles.push_back(c);
    f.area = cy.left_area;
    arr.faces.push_back(std::move(f));
  }
  for (int k = 0; k < arr.component_count; ++k) {
    const int oc = outer_of[k];
    const int target = parent_cycle[k] < 0 ? reference_face : arr.cycles[parent_cycle[k]].face;
    arr.cycles[oc].face = target;
    arr.faces[target].cycles.push_back(oc);
    arr.faces[target].area -= kFourPi - arr.cycles[oc].left_area;
  }

  // Cover sets: membership of the reference face by direct test, then across edges.
  std::vector<std::vector<int>> adjacency(arr.faces.size());
  for (int h = 0; h < H; ++h) adjacency[arr.face_of(h)].push_back(h);
  std::vector<char> seen(arr.faces.size(), 0);
  for (int i = 0; i < n; ++i) {
    if (disc_contains(discs[i], arr.reference)) arr.faces[reference_face].cover.push_back(i);
  }
  seen[reference_face] = 1;
  std::vector<int> queue{reference_face};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int f = queue[qi];
    for (int h : adjacency[f]) {
      const int disc = arr.disc_of(h);
      const bool inside = h % 2 == 0;
      if (arr.covers(f, disc) != inside) {
        throw Error(ErrorCode::degenerate_input, "inconsistent cover across disc " + std::to_string(disc));
      }
      const int g = arr.face_of(h ^ 1);
      if (seen[g]) continue;
      seen[g] = 1;
      auto cover = arr.faces[f].cover;
      if (inside) {
        cover.erase(std::find(cover.begin(), cover.end(), disc));
      } else {
        cover.insert(std::upper_bound(cover.begin(), cover.end(), disc), disc);
      }
      arr.faces[g].cover = std::move(cover);
      queue.push_back(g);
    }
  }
  return arr;
}

inline Arrangement build_arrangement(const std::vector<SphericalDisc>& discs,
                                     double eps_angle = kDefaultAngleEpsilon) {
  return build_arrangement(discs, all_crossings(discs, eps_angle));
}

inline double face_area(const Arrangement& arr, int face) { return arr.faces[face].area; }

/// Up to `count` points just left of distinct boundary arcs of the face.
inline std::vector<Vec3> face_probe_points(const Arrangement& arr, int face, int count = 3, double offset = 1e-5) {
  std::vector<Vec3> pts;
  for (int c : arr.faces[face].cycles) {
    for (int h : arr.cycles[c].half_edges) {
      if (static_cast<int>(pts.size()) >= count) return pts;
      const auto& e = arr.edges[h / 2];
      const auto& curve = arr.discs[e.disc].boundary;
      const auto s = curve.interpolate(0.5 * (e.phi_start + e.phi_end));
      const Vec3 t = (h % 2 == 0 ? 1.0 : -1.0) * s.tangent.normalized();
      pts.push_back((s.point + offset * s.point.cross(t)).normalized());
    }
  }
  return pts;
}

/// Number of probe points whose disc membership disagrees with their face cover.
inline int verify_face_covers(const Arrangement& arr, int probes_per_face = 3) {
  int bad = 0;
  for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
    for (const auto& p : face_probe_points(arr, f, probes_per_face)) {
      for (int i = 0; i < static_cast<int>(arr.discs.size()); ++i) {
        if (disc_contains(arr.discs[i], p) != arr.covers(f, i)) {
          ++bad;
          break;
        }
      }
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Intersection components

enum class ComponentKind { overlap, crossway, vertex_free };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::overlap: return "overlap";
    case ComponentKind::crossway: return "crossway";
    case ComponentKind::vertex_free: return "vertex-free";
  }
  return "?";
}

struct IntersectionComponent {
  int i = 0;
  int j = 0;
  std::vector<int> faces;
  int edge_count = 0;
  ComponentKind kind = ComponentKind::overlap;
  double area = 0.0;
};

namespace detail {

inline std::vector<std::vector<int>> group_faces(const Arrangement& arr, const std::vector<int>& faces) {
  std::map<int, int> index;
  for (int k = 0; k < static_cast<int>(faces.size()); ++k) index[faces[k]] = k;
  UnionFind uf(faces.size());
  for (int h = 0; h < arr.half_edge_count(); h += 2) {
    const auto a = index.find(arr.face_of(h));
    const auto b = index.find(arr.face_of(h + 1));
    if (a != index.end() && b != index.end()) uf.unite(a->second, b->second);
  }
  std::map<int, std::vector<int>> groups;
  for (int k = 0; k < static_cast<int>(faces.size()); ++k) groups[uf.find(k)].push_back(faces[k]);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

}  // namespace detail

/// Components of the interior of D_i and D_j, as unions of faces.
inline std::vector<IntersectionComponent> classify_components(const Arrangement& arr, int i, int j) {
  if (i > j) std::swap(i, j);
  std::vector<int> both;
  for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
    if (arr.covers(f, i) && arr.covers(f, j)) both.push_back(f);
  }
  std::vector<IntersectionComponent> out;
  for (auto& g : detail::group_faces(arr, both)) {
    IntersectionComponent c;
    c.i = i;
    c.j = j;
    c.faces = std::move(g);
    for (int f : c.faces) c.area += arr.faces[f].area;
    out.push_back(std::move(c));
  }
  // Each i-j crossing has exactly one quadrant inside both discs.
  for (const auto& v : arr.vertices) {
    if (!((v.disc[0] == i && v.disc[1] == j) || (v.disc[0] == j && v.disc[1] == i))) continue;
    for (int h : v.out) {
      const int f = arr.face_of(h);
      if (!(arr.covers(f, i) && arr.covers(f, j))) continue;
      for (auto& c : out) {
        if (std::find(c.faces.begin(), c.faces.end(), f) != c.faces.end()) ++c.edge_count;
      }
      break;
    }
  }
  for (auto& c : out) {
    if (c.edge_count % 2 != 0) {
      throw Error(ErrorCode::degenerate_input, "odd edge count on an intersection component");
    }
    c.kind = c.edge_count == 0   ? ComponentKind::vertex_free
             : c.edge_count == 2 ? ComponentKind::overlap
                                 : ComponentKind::crossway;
  }
  return out;
}

/// Pairs (i, j) of discs whose interiors meet.
inline std::vector<std::pair<int, int>> intersecting_pairs(const Arrangement& arr) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& f : arr.faces) {
    for (std::size_t a = 0; a < f.cover.size(); ++a) {
      for (std::size_t b = a + 1; b < f.cover.size(); ++b) pairs.insert({f.cover[a], f.cover[b]});
    }
  }
  return {pairs.begin(), pairs.end()};
}

inline std::vector<IntersectionComponent> all_components(const Arrangement& arr) {
  std::vector<IntersectionComponent> out;
  for (const auto& [i, j] : intersecting_pairs(arr)) {
    auto c = classify_components(arr, i, j);
    out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  return out;
}

struct CrossingContent {
  std::optional<double> min_area;
  int crossways = 0;
};

inline CrossingContent crossing_content(const std::vector<IntersectionComponent>& components) {
  CrossingContent cc;
  for (const auto& c : components) {
    if (c.kind != ComponentKind::crossway) continue;
    ++cc.crossways;
    cc.min_area = cc.min_area ? std::min(*cc.min_area, c.area) : c.area;
  }
  return cc;
}

inline CrossingContent crossing_content(const Arrangement& arr) { return crossing_content(all_components(arr)); }

// ---------------------------------------------------------------------------
// Hubs

struct Hub {
  std::vector<int> faces;       // crossway faces; empty for a whole-disc hub
  std::vector<int> components;  // indices into the component list
  int disc = -1;                // whole-disc hub
};

namespace detail {

inline std::vector<char> crossway_faces(const Arrangement& arr, const std::vector<IntersectionComponent>& comps) {
  std::vector<char> mark(arr.faces.size(), 0);
  for (const auto& c : comps) {
    if (c.kind != ComponentKind::crossway) continue;
    for (int f : c.faces) mark[f] = 1;
  }
  return mark;
}

}  // namespace detail

/// Maximal connected unions of crossway interiors (crossways sharing a face
/// merge), then one hub per disc containing no crossway.
inline std::vector<Hub> hubs(const Arrangement& arr, const std::vector<IntersectionComponent>& comps) {
  detail::UnionFind uf(comps.size());
  std::map<int, int> owner;  // face -> first crossway holding it
  for (int k = 0; k < static_cast<int>(comps.size()); ++k) {
    if (comps[k].kind != ComponentKind::crossway) continue;
    for (int f : comps[k].faces) {
      const auto [it, fresh] = owner.emplace(f, k);
      if (!fresh) uf.unite(it->second, k);
    }
  }
  std::map<int, Hub> merged;
  for (int k = 0; k < static_cast<int>(comps.size()); ++k) {
    if (comps[k].kind != ComponentKind::crossway) continue;
    auto& hub = merged[uf.find(k)];
    hub.components.push_back(k);
    hub.faces.insert(hub.faces.end(), comps[k].faces.begin(), comps[k].faces.end());
  }
  std::vector<Hub> out;
  for (auto& [root, hub] : merged) {
    std::sort(hub.faces.begin(), hub.faces.end());
    hub.faces.erase(std::unique(hub.faces.begin(), hub.faces.end()), hub.faces.end());
    out.push_back(std::move(hub));
  }
  for (int i = 0; i < static_cast<int>(arr.discs.size()); ++i) {
    bool contains = false;
    for (const auto& c : comps) {
      if (c.kind != ComponentKind::crossway) continue;
      contains = std::all_of(c.faces.begin(), c.faces.end(), [&](int f) { return arr.covers(f, i); });
      if (contains) break;
    }
    if (!contains) {
      Hub h;
      h.disc = i;
      out.push_back(std::move(h));
    }
  }
  return out;
}

inline std::vector<Hub> hubs(const Arrangement& arr) { return hubs(arr, all_components(arr)); }

// ---------------------------------------------------------------------------
// Links and coves

struct DiscRegion {
  std::vector<int> faces;
  int boundary_segments = 0;  // connected pieces of the region's intersection with the disc boundary
};

struct LinkReport {
  int disc = 0;
  int crossway_components = 0;  // components of the disc meet the crossway union
  std::vector<DiscRegion> links;
  std::vector<DiscRegion> coves;
  int enclosed = 0;  // regions not touching the disc boundary
};

inline LinkReport links_and_coves(const Arrangement& arr, int i, const std::vector<IntersectionComponent>& comps) {
  LinkReport r;
  r.disc = i;
  const auto in_u = detail::crossway_faces(arr, comps);
  std::vector<int> x_faces, u_faces;
  for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
    if (!arr.covers(f, i)) continue;
    (in_u[f] ? u_faces : x_faces).push_back(f);
  }
  r.crossway_components = static_cast<int>(detail::group_faces(arr, u_faces).size());

  // Boundary arcs of D_i in order, with the face just inside each.
  std::vector<std::pair<double, int>> arcs;
  for (int e = 0; e < static_cast<int>(arr.edges.size()); ++e) {
    if (arr.edges[e].disc == i) arcs.push_back({arr.edges[e].phi_start, arr.face_of(2 * e)});
  }
  std::sort(arcs.begin(), arcs.end());

  if (r.crossway_components == 0) {
    DiscRegion whole;
    whole.faces = x_faces;
    whole.boundary_segments = 1;
    r.links.push_back(std::move(whole));
    return r;
  }

  const auto groups = detail::group_faces(arr, x_faces);
  std::map<int, int> group_of;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    for (int f : groups[g]) group_of[f] = g;
  }
  std::vector<int> seq;
  for (const auto& a : arcs) {
    const auto it = group_of.find(a.second);
    seq.push_back(it == group_of.end() ? -1 : it->second);
  }
  std::vector<int> runs(groups.size(), 0);
  std::vector<char> touches(groups.size(), 0);
  const std::size_t m = seq.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (seq[k] < 0) continue;
    touches[seq[k]] = 1;
    if (seq[(k + m - 1) % m] != seq[k]) ++runs[seq[k]];
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (touches[g] && runs[g] == 0) runs[g] = 1;  // the whole boundary
    DiscRegion region{groups[g], runs[g]};
    if (runs[g] >= 2) {
      r.links.push_back(std::move(region));
    } else if (runs[g] == 1) {
      r.coves.push_back(std::move(region));
    } else {
      ++r.enclosed;
    }
  }
  return r;
}

inline LinkReport links_and_coves(const Arrangement& arr, int i) { return links_and_coves(arr, i, all_components(arr)); }

// ---------------------------------------------------------------------------
// Holes

struct Hole {
  int face = -1;
  double area = 0.0;
  std::vector<std::vector<int>> sequences;  // disc labels per boundary cycle, cyclic
  bool simply_connected = true;
};

inline std::vector<int> merge_cyclic_repeats(std::vector<int> seq) {
  std::vector<int> out;
  for (int s : seq) {
    if (out.empty() || out.back() != s) out.push_back(s);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

/// Complement faces of the union with their boundary label sequences.
inline std::vector<Hole> holes(const Arrangement& arr) {
  std::vector<Hole> out;
  for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
    if (!arr.faces[f].cover.empty()) continue;
    Hole h;
    h.face = f;
    h.area = arr.faces[f].area;
    for (int c : arr.faces[f].cycles) {
      std::vector<int> seq;
      for (int he : arr.cycles[c].half_edges) seq.push_back(arr.discs[arr.disc_of(he)].label);
      h.sequences.push_back(merge_cyclic_repeats(std::move(seq)));
    }
    h.simply_connected = h.sequences.size() <= 1;
    out.push_back(std::move(h));
  }
  return out;
}

/// Groups of discs whose union is connected.
inline std::vector<std::vector<int>> union_components(const Arrangement& arr) {
  const int n = static_cast<int>(arr.discs.size());
  detail::UnionFind uf(n);
  for (const auto& f : arr.faces) {
    for (std::size_t k = 1; k < f.cover.size(); ++k) uf.unite(f.cover[0], f.cover[k]);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

/// Arrangement of a subset of the discs, reusing the crossings already found.
inline Arrangement sub_arrangement(const Arrangement& arr, const std::vector<int>& subset) {
  std::vector<SphericalDisc> discs;
  std::map<int, int> local;
  for (int i : subset) {
    local[i] = static_cast<int>(discs.size());
    discs.push_back(arr.discs[i]);
  }
  CrossingMap crossings;
  for (const auto& v : arr.vertices) {
    const auto a = local.find(v.disc[0]);
    const auto b = local.find(v.disc[1]);
    if (a == local.end() || b == local.end()) continue;
    CrossingPoint x;
    x.position = v.position;
    x.local_phi = v.phi;
    x.phi = v.phi;
    x.tangent = v.tangent;
    x.angle = v.angle;
    x.transversal = true;
    crossings[{a->second, b->second}].push_back(x);
  }
  return build_arrangement(discs, crossings);
}

/// Holes of each connected part of the union, as if the others were absent.
inline std::vector<std::vector<Hole>> holes_per_component(const Arrangement& arr) {
  const auto groups = union_components(arr);
  if (groups.size() <= 1) return {holes(arr)};
  std::vector<std::vector<Hole>> out;
  for (const auto& g : groups) out.push_back(holes(sub_arrangement(arr, g)));
  return out;
}

namespace detail {

inline int incidences_connected(const Arrangement& arr) {
  int count = 0;
  for (const auto& h : holes(arr)) {
    std::set<int> discs;
    for (int c : arr.faces[h.face].cycles) {
      for (int he : arr.cycles[c].half_edges) discs.insert(arr.disc_of(he));
    }
    count += static_cast<int>(discs.size());
  }
  return count;
}

}  // namespace detail

/// Pairs (disc, hole) sharing a boundary arc, counted per connected part of the union.
inline int disc_hole_incidences(const Arrangement& arr) {
  const auto groups = union_components(arr);
  if (groups.size() <= 1) return detail::incidences_connected(arr);
  int count = 0;
  for (const auto& g : groups) count += detail::incidences_connected(sub_arrangement(arr, g));
  return count;
}

// ---------------------------------------------------------------------------
// Ordering with connected prefixes

/// Order of the discs in which every prefix union is connected: leaves of a
/// spanning tree of the intersection graph are removed one at a time, and the
/// removal order is reversed.
inline std::vector<int> connected_order(int n, const std::vector<std::pair<int, int>>& intersecting) {
  if (n == 0) return {};
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : intersecting) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> parent(n, -2);
  std::vector<std::vector<int>> tree(n);
  parent[0] = -1;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int w : adj[queue[qi]]) {
      if (parent[w] != -2) continue;
      parent[w] = queue[qi];
      tree[w].push_back(queue[qi]);
      tree[queue[qi]].push_back(w);
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != n) {
    throw Error(ErrorCode::disconnected_union, "the disc union has more than one component");
  }
  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) degree[i] = static_cast<int>(tree[i].size());
  std::set<int> leaves;
  for (int i = 0; i < n; ++i) {
    if (degree[i] <= 1) leaves.insert(i);
  }
  std::vector<char> removed(n, 0);
  std::vector<int> order;
  while (!leaves.empty()) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    if (removed[leaf]) continue;
    removed[leaf] = 1;
    order.push_back(leaf);
    for (int w : tree[leaf]) {
      if (removed[w]) continue;
      if (--degree[w] <= 1) leaves.insert(w);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

inline std::vector<int> connected_order(const Arrangement& arr) {
  return connected_order(static_cast<int>(arr.discs.size()), intersecting_pairs(arr));
}

/// True when every prefix of `order` has a connected union.
inline bool prefixes_connected(const std::vector<int>& order, const std::vector<std::pair<int, int>>& intersecting) {
  for (std::size_t len = 1; len <= order.size(); ++len) {
    std::map<int, int> local;
    for (std::size_t k = 0; k < len; ++k) local[order[k]] = static_cast<int>(k);
    detail::UnionFind uf(len);
    int parts = static_cast<int>(len);
    for (const auto& [a, b] : intersecting) {
      const auto ia = local.find(a), ib = local.find(b);
      if (ia != local.end() && ib != local.end() && uf.unite(ia->second, ib->second)) --parts;
    }
    if (parts != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Union boundary

struct UnionBoundary {
  int vertices = 0;
  int edges = 0;
};

/// Arcs and crossings on the boundary of the disc union.
inline UnionBoundary union_boundary(const Arrangement& arr) {
  UnionBoundary b;
  for (int e = 0; e < static_cast<int>(arr.edges.size()); ++e) {
    if (arr.faces[arr.face_of(2 * e + 1)].cover.empty()) ++b.edges;
  }
  for (const auto& v : arr.vertices) {
    for (int h : v.out) {
      if (arr.faces[arr.face_of(h)].cover.empty()) {
        ++b.vertices;
        break;
      }
    }
  }
  return b;
}

}  // namespace hullscope
