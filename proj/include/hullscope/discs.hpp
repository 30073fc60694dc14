#pragma once

// Closed discs on the sphere bounded by C1 Jordan curves (interior on the
// left of the oriented boundary), pairwise boundary intersections and
// general-position perturbation.

#include "hullscope/curve.hpp"
#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"
#include "hullscope/preseam.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace hullscope {

struct FourierTerm {
  int k = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Generator parameters of a synthetic disc, kept for fixture files.
struct SyntheticParams {
  double base_latitude = 0.0;
  std::vector<FourierTerm> terms;
  Quat rotation = Quat::Identity();
};

struct SphericalDisc {
  ClosedCurve boundary;
  int label = 0;
  std::optional<SyntheticParams> synthetic;
};

struct CrossingPoint {
  Vec3 position = Vec3::Zero();
  std::array<double, 2> phi{};      // parameter on each curve, in [0, 2pi)
  std::array<double, 2> local_phi{};  // same crossing on the sampled interpolants
  std::array<Vec3, 2> tangent{};    // d/dphi on each curve
  bool transversal = true;
  double angle = 0.0;               // acute angle between the tangent lines
};

inline constexpr double kDefaultAngleEpsilon = 1e-6;

// ---------------------------------------------------------------------------
// Point membership

namespace detail {

/// Parameter on segment k of the point closest to x, then side of x w.r.t. the curve.
inline bool smooth_side_left(const ClosedCurve& c, std::size_t k, const Vec3& x) {
  double lo = c.segment_start(k);
  double hi = c.segment_end(k);
  const double span = hi - lo;
  lo -= span;
  hi += span;
  // Closest point maximizes x . c(phi); golden-free ternary search is enough on this short interval.
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (x.dot(c.hermite(k, m1).point) < x.dot(c.hermite(k, m2).point)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  double phi = 0.5 * (lo + hi);
  CurveSample s = c.evaluate(phi);
  // Polish on the exact curve: stationarity of x . c(phi).
  for (int it = 0; it < 8 && c.has_generator(); ++it) {
    const double g = x.dot(s.tangent);
    const double d2 = -x.dot(s.point) * s.tangent.squaredNorm();
    if (std::abs(d2) < 1e-300) break;
    const double step = -g / d2;
    if (std::abs(step) > span) break;
    phi += step;
    s = c.evaluate(phi);
    if (std::abs(step) < 1e-15) break;
  }
  return x.dot(s.point.cross(s.tangent)) > 0.0;
}

inline std::vector<Vec3> polyline(const ClosedCurve& c) {
  std::vector<Vec3> pts;
  pts.reserve(c.size());
  for (const auto& s : c.samples()) pts.push_back(s.point);
  return pts;
}

}  // namespace detail

/// Signed winding test on the sampled boundary, corrected near the boundary
/// by the side of the smooth curve.
inline bool disc_contains(const SphericalDisc& disc, const Vec3& x) {
  const auto& c = disc.boundary;
  const auto pts = detail::polyline(c);
  bool inside = polygon_contains(pts, x);
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double d = chord_distance(pts[k], pts[(k + 1) % pts.size()], x) - c.sag(k);
    if (d < best) {
      best = d;
      nearest = k;
    }
  }
  if (best < 1e-9) inside = detail::smooth_side_left(c, nearest, x);
  return inside;
}

/// Area of the disc: Gauss-Bonnet on the sampled polygon plus chord slivers.
inline double disc_area(const SphericalDisc& disc) {
  const auto& c = disc.boundary;
  const auto pts = detail::polyline(c);
  double area = geodesic_polygon_area(pts);
  for (std::size_t k = 0; k < c.size(); ++k) {
    area -= sliver_area(c, k, c.segment_start(k), c.segment_end(k), pts[k], pts[(k + 1) % pts.size()]);
  }
  return area;
}

// ---------------------------------------------------------------------------
// Construction

struct DiscOptions {
  TracePolicy trace;
};

/// Hidden disc of body0 with respect to body1: directions w with w^T q(w) > 0,
/// bounded by the pre-seam traced counter-clockwise about v0.
inline SphericalDisc hidden_disc(const PlacedPair& pair, const Basis& basis, int label,
                                 const TracePolicy& policy = {}) {
  const auto curve = trace_pair(pair, basis, policy);
  std::vector<CurveSample> samples;
  samples.reserve(curve.samples.size());
  for (const auto& s : curve.samples) samples.push_back({s.phi, s.point, s.tangent});
  CurveGenerator gen = [pair, basis](double phi) {
    const auto s = preseam_sample(pair, basis, phi);
    return CurveSample{phi, s.point, s.tangent};
  };
  return SphericalDisc{ClosedCurve(std::move(samples), std::move(gen)), label, std::nullopt};
}

inline SphericalDisc hidden_disc(const PairDescriptor& d, int label = 1, const TracePolicy& policy = {}) {
  return hidden_disc(place_pair(d), d.basis(), label, policy);
}

namespace detail {

inline bool segments_cross(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  // Strict sign changes only: chords of one great circle never count as crossing.
  const auto straddles = [](double s0, double s1, double scale) {
    const double eps = 1e-12 * scale;
    return (s0 > eps && s1 < -eps) || (s0 < -eps && s1 > eps);
  };
  const Vec3 na = a0.cross(a1);
  const Vec3 nb = b0.cross(b1);
  if (!straddles(b0.dot(na), b1.dot(na), na.norm())) return false;
  if (!straddles(a0.dot(nb), a1.dot(nb), nb.norm())) return false;
  return (a0 + a1).dot(b0 + b1) > 0.0;
}

inline bool polyline_simple(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Disc bounded by theta(phi) = base + sum amplitude*cos(k phi + phase) about
/// the x axis (interior towards +x), then rotated.
inline SphericalDisc synthetic_disc(double base_latitude, const std::vector<FourierTerm>& terms,
                                    const Quat& rotation, int label, int samples = 256) {
  const Mat3 R = rotation.normalized().toRotationMatrix();
  const Basis basis;
  auto gen = [=](double phi) {
    double theta = base_latitude;
    double dtheta = 0.0;
    for (const auto& t : terms) {
      theta += t.amplitude * std::cos(t.k * phi + t.phase);
      dtheta -= t.amplitude * t.k * std::sin(t.k * phi + t.phase);
    }
    const Vec3 radial = std::cos(phi) * basis.v1 + std::sin(phi) * basis.v2;
    const Vec3 around = -std::sin(phi) * basis.v1 + std::cos(phi) * basis.v2;
    const Vec3 p = std::sin(theta) * basis.v0 + std::cos(theta) * radial;
    const Vec3 dp = dtheta * (std::cos(theta) * basis.v0 - std::sin(theta) * radial) + std::cos(theta) * around;
    return CurveSample{phi, (R * p).normalized(), R * dp};
  };

  const double guard = 0.5 * kPi - 0.05;
  for (int i = 0; i < 8192; ++i) {
    const double phi = kTwoPi * i / 8192.0;
    double theta = base_latitude;
    for (const auto& t : terms) theta += t.amplitude * std::cos(t.k * phi + t.phase);
    if (std::abs(theta) >= guard) {
      throw Error(ErrorCode::not_simple, "latitude " + std::to_string(theta) + " leaves the pole guard band");
    }
  }
  std::vector<CurveSample> s;
  s.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) s.push_back(gen(kTwoPi * i / samples));
  ClosedCurve curve(std::move(s), gen);
  if (!detail::polyline_simple(detail::polyline(curve))) {
    throw Error(ErrorCode::not_simple, "boundary polyline self-intersects");
  }
  return SphericalDisc{std::move(curve), label, SyntheticParams{base_latitude, terms, rotation.normalized()}};
}

inline SphericalDisc rotate_disc(const SphericalDisc& disc, const Mat3& R) {
  SphericalDisc out{disc.boundary.rotated(R), disc.label, disc.synthetic};
  if (out.synthetic) out.synthetic->rotation = (Quat(R) * out.synthetic->rotation).normalized();
  return out;
}

// ---------------------------------------------------------------------------
// Intersections

namespace detail {

struct Box {
  Vec3 lo;
  Vec3 hi;
};

inline Box segment_box(const ClosedCurve& c, std::size_t k) {
  const Vec3& a = c.point(k);
  const Vec3& b = c.point(k + 1);
  const Vec3 m = c.hermite(k, 0.5 * (c.segment_start(k) + c.segment_end(k))).point;
  Vec3 lo = a.cwiseMin(b).cwiseMin(m);
  Vec3 hi = a.cwiseMax(b).cwiseMax(m);
  const double pad = 2.0 * c.sag(k) + 1e-9;
  lo.array() -= pad;
  hi.array() += pad;
  return {lo, hi};
}

inline bool boxes_overlap(const Box& a, const Box& b) {
  return (a.lo.array() <= b.hi.array()).all() && (b.lo.array() <= a.hi.array()).all();
}

struct Solve {
  bool ok = false;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Gauss-Newton on c1(phi1) = c2(phi2) with the supplied evaluators.
template <class Eval1, class Eval2>
Solve solve_crossing(Eval1&& e1, Eval2&& e2, double phi1, double phi2, double tol) {
  for (int it = 0; it < 50; ++it) {
    const CurveSample s1 = e1(phi1);
    const CurveSample s2 = e2(phi2);
    const Vec3 r = s1.point - s2.point;
    if (r.norm() <= tol) return {true, phi1, phi2};
    Eigen::Matrix<double, 3, 2> J;
    J.col(0) = s1.tangent;
    J.col(1) = -s2.tangent;
    const Eigen::Matrix2d JtJ = J.transpose() * J;
    const double det = JtJ.determinant();
    if (!(std::abs(det) > 1e-300)) return {};
    const Eigen::Vector2d step = JtJ.ldlt().solve(-J.transpose() * r);
    if (!step.allFinite() || step.cwiseAbs().maxCoeff() > 1.0) return {};
    phi1 += step(0);
    phi2 += step(1);
  }
  return {};
}

inline bool within(double phi, double start, double end, double tol) {
  double local = phi - start;
  local -= kTwoPi * std::floor((local + tol) / kTwoPi);
  return local >= -tol && local < (end - start) + tol;
}

/// Crossings of segment k1 of c1 with segment k2 of c2, located on the
/// interpolants and polished on the exact curves.
inline void segment_pair_crossings(const ClosedCurve& c1, std::size_t k1, const ClosedCurve& c2, std::size_t k2,
                                   std::vector<CrossingPoint>& out) {
  const double s1 = c1.segment_start(k1), e1 = c1.segment_end(k1);
  const double s2 = c2.segment_start(k2), e2 = c2.segment_end(k2);
  const auto h1 = [&](double p) { return c1.hermite(k1, p); };
  const auto h2 = [&](double p) { return c2.hermite(k2, p); };
  const std::array<std::array<double, 2>, 5> seeds = {{{0.5, 0.5}, {0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}}};
  std::vector<std::array<double, 2>> found;
  for (const auto& seed : seeds) {
    const auto sol = solve_crossing(h1, h2, s1 + seed[0] * (e1 - s1), s2 + seed[1] * (e2 - s2), 1e-14);
    if (!sol.ok) continue;
    const double tol = 1e-12;
    if (!within(sol.phi1, s1, e1, tol) || !within(sol.phi2, s2, e2, tol)) continue;
    bool dup = false;
    for (const auto& f : found) {
      if (std::abs(f[0] - sol.phi1) < 1e-9 && std::abs(f[1] - sol.phi2) < 1e-9) dup = true;
    }
    if (dup) continue;
    found.push_back({sol.phi1, sol.phi2});
    double p1 = sol.phi1, p2 = sol.phi2;
    if (c1.has_generator() || c2.has_generator()) {
      const auto polished = solve_crossing([&](double p) { return c1.evaluate(p); },
                                           [&](double p) { return c2.evaluate(p); }, p1, p2, 1e-13);
      if (polished.ok) {
        p1 = polished.phi1;
        p2 = polished.phi2;
      }
    }
    const CurveSample a = c1.evaluate(p1);
    const CurveSample b = c2.evaluate(p2);
    CrossingPoint x;
    x.position = (0.5 * (a.point + b.point)).normalized();
    x.phi = {wrap_angle(p1), wrap_angle(p2)};
    x.local_phi = {wrap_angle(sol.phi1), wrap_angle(sol.phi2)};
    x.tangent = {a.tangent, b.tangent};
    const double ang = angle_between(a.tangent, b.tangent);
    x.angle = std::min(ang, kPi - ang);
    out.push_back(x);
  }
}

/// Uniform grid over segment boxes of several curves.
class SegmentGrid {
 public:
  SegmentGrid(const std::vector<const ClosedCurve*>& curves, double cell) : cell_(cell) {
    for (std::size_t c = 0; c < curves.size(); ++c) {
      for (std::size_t k = 0; k < curves[c]->size(); ++k) {
        const Box b = segment_box(*curves[c], k);
        const std::size_t id = entries_.size();
        entries_.push_back({static_cast<int>(c), static_cast<int>(k), b});
        const auto lo = index(b.lo), hi = index(b.hi);
        for (int x = lo[0]; x <= hi[0]; ++x)
          for (int y = lo[1]; y <= hi[1]; ++y)
            for (int z = lo[2]; z <= hi[2]; ++z) cells_[key(x, y, z)].push_back(id);
      }
    }
  }

  /// Calls f(curve_a, seg_a, curve_b, seg_b) once per overlapping pair with curve_a < curve_b.
  template <class F>
  void for_each_candidate(F&& f) const {
    std::vector<std::uint64_t> keys;
    keys.reserve(cells_.size());
    for (const auto& kv : cells_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (const auto cell_key : keys) {
      const auto& ids = cells_.at(cell_key);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          const Entry* a = &entries_[ids[i]];
          const Entry* b = &entries_[ids[j]];
          if (a->curve == b->curve) continue;
          if (!boxes_overlap(a->box, b->box)) continue;
          // Report each pair only from the cell holding the low corner of the box overlap.
          const Vec3 corner = a->box.lo.cwiseMax(b->box.lo);
          const auto ci = index(corner);
          if (key(ci[0], ci[1], ci[2]) != cell_key) continue;
          if (a->curve > b->curve) std::swap(a, b);
          f(a->curve, a->seg, b->curve, b->seg);
        }
      }
    }
  }

 private:
  struct Entry {
    int curve;
    int seg;
    Box box;
  };

  std::array<int, 3> index(const Vec3& p) const {
    return {static_cast<int>(std::floor((p.x() + 2.0) / cell_)), static_cast<int>(std::floor((p.y() + 2.0) / cell_)),
            static_cast<int>(std::floor((p.z() + 2.0) / cell_))};
  }
  static std::uint64_t key(int x, int y, int z) {
    return (static_cast<std::uint64_t>(x) << 42) ^ (static_cast<std::uint64_t>(y) << 21) ^
           static_cast<std::uint64_t>(z);
  }

  double cell_;
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

inline double grid_cell_size(const std::vector<const ClosedCurve*>& curves) {
  double longest = 0.0;
  for (const auto* c : curves) {
    for (std::size_t k = 0; k < c->size(); ++k) longest = std::max(longest, (c->point(k + 1) - c->point(k)).norm());
  }
  return std::clamp(2.0 * longest, 0.02, 1.0);
}

inline void dedupe(std::vector<CrossingPoint>& xs) {
  std::vector<CrossingPoint> out;
  for (const auto& x : xs) {
    bool dup = false;
    for (const auto& y : out) {
      const double d0 = std::abs(std::remainder(x.phi[0] - y.phi[0], kTwoPi));
      const double d1 = std::abs(std::remainder(x.phi[1] - y.phi[1], kTwoPi));
      if (d0 < 1e-9 && d1 < 1e-9) dup = true;
    }
    if (!dup) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [](const CrossingPoint& a, const CrossingPoint& b) { return a.phi[0] < b.phi[0]; });
  xs = std::move(out);
}

}  // namespace detail

/// All pairwise boundary crossings, keyed by (i, j) with i < j; transversality
/// is classified but not enforced.
inline std::map<std::pair<int, int>, std::vector<CrossingPoint>> all_crossings(
    const std::vector<SphericalDisc>& discs, double eps_angle = kDefaultAngleEpsilon) {
  std::vector<const ClosedCurve*> curves;
  for (const auto& d : discs) curves.push_back(&d.boundary);
  std::map<std::pair<int, int>, std::vector<CrossingPoint>> result;
  if (curves.size() < 2) return result;
  detail::SegmentGrid grid(curves, detail::grid_cell_size(curves));
  grid.for_each_candidate([&](int a, int ka, int b, int kb) {
    detail::segment_pair_crossings(*curves[a], ka, *curves[b], kb, result[{a, b}]);
  });
  for (auto& [key, xs] : result) {
    detail::dedupe(xs);
    for (auto& x : xs) x.transversal = x.angle > eps_angle;
  }
  for (auto it = result.begin(); it != result.end();) it = it->second.empty() ? result.erase(it) : std::next(it);
  return result;
}

inline std::vector<CrossingPoint> curve_intersections(const ClosedCurve& c1, const ClosedCurve& c2,
                                                      double eps_angle = kDefaultAngleEpsilon) {
  std::vector<SphericalDisc> pair{{c1, 0, std::nullopt}, {c2, 1, std::nullopt}};
  auto all = all_crossings(pair, eps_angle);
  auto xs = all.count({0, 1}) ? all[{0, 1}] : std::vector<CrossingPoint>{};
  for (const auto& x : xs) {
    if (!x.transversal) {
      throw Error(ErrorCode::tangential_contact,
                  "crossing angle " + std::to_string(x.angle) + " rad below " + std::to_string(eps_angle));
    }
  }
  return xs;
}

// ---------------------------------------------------------------------------
// General position

struct PerturbOptions {
  double initial_magnitude = 1e-4;
  double max_magnitude = 1e-2;
  double eps_angle = kDefaultAngleEpsilon;
  double triple_tolerance = 1e-9;
  int max_retries = 20;
};

struct PerturbResult {
  std::vector<SphericalDisc> discs;
  std::map<std::pair<int, int>, std::vector<CrossingPoint>> crossings;
  std::vector<double> rotation_angles;
  int attempts = 0;
};

namespace detail {

inline bool odd_count(const std::map<std::pair<int, int>, std::vector<CrossingPoint>>& xs) {
  for (const auto& [key, v] : xs) {
    if (v.size() % 2 != 0) return true;
  }
  return false;
}

inline bool in_general_position(const std::map<std::pair<int, int>, std::vector<CrossingPoint>>& xs,
                                double triple_tolerance) {
  struct Tagged {
    Vec3 p;
    std::pair<int, int> key;
  };
  std::vector<Tagged> all;
  for (const auto& [key, v] : xs) {
    for (const auto& x : v) {
      if (!x.transversal) return false;
      all.push_back({x.position, key});
    }
  }
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.p.x() < b.p.x(); });
  // Two crossings of different curve pairs this close mean three curves share a point.
  const double tol = std::max(triple_tolerance, 1e-12) * 10.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size() && all[j].p.x() - all[i].p.x() <= tol; ++j) {
      if (all[i].key != all[j].key && (all[i].p - all[j].p).norm() <= tol) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Independent random rotations (axis uniform, angle uniform up to the
/// current cap) until every crossing is transversal and no three boundaries
/// meet; the cap doubles on each retry.
inline PerturbResult perturb_general_position(const std::vector<SphericalDisc>& discs, std::uint64_t seed,
                                              const PerturbOptions& options = {}) {
  Rng rng(seed);
  double cap = options.initial_magnitude;
  for (int attempt = 1; attempt <= options.max_retries; ++attempt) {
    PerturbResult result;
    result.attempts = attempt;
    for (const auto& d : discs) {
      const Vec3 axis = rng.unit_vector();
      const double angle = rng.uniform(0.0, cap);
      result.rotation_angles.push_back(angle);
      result.discs.push_back(rotate_disc(d, rotation_about(axis, angle)));
    }
    result.crossings = all_crossings(result.discs, options.eps_angle);
    if (!detail::odd_count(result.crossings) &&
        detail::in_general_position(result.crossings, options.triple_tolerance)) {
      return result;
    }
    cap = std::min(2.0 * cap, options.max_magnitude);
  }
  throw Error(ErrorCode::give_up, "no general-position perturbation after " + std::to_string(options.max_retries) +
                                      " retries");
}

}  // namespace hullscope
