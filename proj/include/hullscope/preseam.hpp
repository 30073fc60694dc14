#pragma once

// Pair descriptors, placed pairs and the pre-seam curve on the unit sphere.
//
// For a pair B0, B1 the pre-seam is {w in S^2 : w^T q(w) = 0} where
// q(w) = p1(w) - p0(w) is the difference of support points. It is traced one
// half-plane at a time: for each angle phi the direction
//   w(theta, phi) = sin(theta) v0 + cos(theta) (cos(phi) v1 + sin(phi) v2)
// crosses the curve exactly once for theta in (-pi/2, pi/2).

#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"
#include "hullscope/models.hpp"
#include "hullscope/normal_map.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace hullscope {

struct PairDescriptor {
  ModelFunction f0;
  ModelFunction f1;
  Vec3 v0 = Vec3::UnitX();
  double t = 1.0;
  Vec3 v1 = Vec3::UnitY();

  Basis basis() const { return Basis::from(v0, v1); }

  void validate() const {
    if (std::abs(v0.norm() - 1.0) > 1e-12 || std::abs(v1.norm() - 1.0) > 1e-12) {
      throw Error(ErrorCode::degenerate_input, "descriptor axes must be unit vectors");
    }
    if (std::abs(v0.dot(v1)) > 1e-12) {
      throw Error(ErrorCode::degenerate_input, "descriptor axes must be orthogonal");
    }
    if (!(t >= 0.0)) throw Error(ErrorCode::degenerate_input, "descriptor gap must be nonnegative");
  }
};

struct PlacedPair {
  Body body0;
  Body body1;
};

/// B0 centred at the origin, B1 translated so that the gap along v0 is t.
inline PlacedPair place_pair(const PairDescriptor& d) {
  d.validate();
  PlacedPair pair;
  pair.body0 = Body{d.f0, Vec3::Zero()};
  const Vec3 p0 = support_point(Body{d.f0, Vec3::Zero()}, d.v0).point;
  const Vec3 p1 = support_point(Body{d.f1, Vec3::Zero()}, -d.v0).point;
  pair.body1 = Body{d.f1, p0 + d.t * d.v0 - p1};
  return pair;
}

inline Vec3 q_vector(const PlacedPair& pair, const Vec3& omega) {
  return support_point(pair.body1, omega).point - support_point(pair.body0, omega).point;
}

struct PreseamPoint {
  double theta = 0.0;
  Vec3 s = Vec3::Zero();
  double residual = 0.0;
};

struct PreseamSample {
  double phi = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 tangent = Vec3::Zero();
  double residual = 0.0;
};

/// Root of h(theta) = w^T q(w) on the half-plane at angle phi: bracketing
/// bisection followed by safeguarded secant steps.
inline PreseamPoint preseam_point(const PlacedPair& pair, const Basis& basis, double phi) {
  const auto h = [&](double theta) {
    const Vec3 w = basis.direction(theta, phi);
    return w.dot(q_vector(pair, w));
  };
  double lo = -0.5 * kPi;
  double hi = 0.5 * kPi;
  double hlo = h(lo);
  double hhi = h(hi);
  if (!(hlo < 0.0 && hhi > 0.0)) {
    throw Error(ErrorCode::no_bracket, "sign condition fails on half-plane phi=" + std::to_string(phi) +
                                           " (h(-pi/2)=" + std::to_string(hlo) +
                                           ", h(pi/2)=" + std::to_string(hhi) + ")");
  }
  const double scale = std::max(1.0, std::max(-hlo, hhi));
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (hm == 0.0) {
      lo = hi = mid;
      hlo = hhi = 0.0;
      break;
    }
    if (hm < 0.0) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
      hhi = hm;
    }
  }
  double theta = 0.5 * (lo + hi);
  double value = h(theta);
  // Illinois-style false position keeps the bracket while converging superlinearly.
  int side = 0;
  for (int it = 0; it < 60 && std::abs(value) > 1e-15 * scale && hi - lo > 1e-17; ++it) {
    theta = (lo * hhi - hi * hlo) / (hhi - hlo);
    if (!(theta > lo && theta < hi)) theta = 0.5 * (lo + hi);
    value = h(theta);
    if (value == 0.0) break;
    if (value < 0.0) {
      lo = theta;
      hlo = value;
      if (side == -1) hhi *= 0.5;
      side = -1;
    } else {
      hi = theta;
      hhi = value;
      if (side == 1) hlo *= 0.5;
      side = 1;
    }
  }
  return {theta, basis.direction(theta, phi), std::abs(value)};
}

/// Tangent ds/dphi from the null space of A = [2 s^T; qbar^T] together with
/// the angular-rate condition beta*dgamma - gamma*dbeta = beta^2 + gamma^2,
/// solved by Cramer's rule on whichever of the minors g1, g2 is larger.
inline Vec3 preseam_tangent(const PlacedPair& pair, const Basis& basis, double /*phi*/,
                            const Vec3& s) {
  const Vec3 q = q_vector(pair, s);
  const Vec3 qc = basis.coords(q / q.norm());
  const Vec3 c = basis.coords(s);
  const double alpha = c.x(), beta = c.y(), gamma = c.z();
  const double g0 = 2.0 * beta * qc.z() - 2.0 * gamma * qc.y();
  const double g1 = 2.0 * alpha * qc.z() - 2.0 * gamma * qc.x();
  const double g2 = 2.0 * alpha * qc.y() - 2.0 * beta * qc.x();
  const double rho2 = beta * beta + gamma * gamma;
  double da, db, dg;
  if (std::abs(g1) < 1e-12 && std::abs(g2) < 1e-12) {
    throw Error(ErrorCode::degenerate_minors, "both minors g1 and g2 vanish");
  }
  if (std::abs(g1) >= std::abs(g2)) {
    db = -rho2 / ((g2 / g1) * beta + gamma);
    da = -g0 * db / g1;
    dg = -g2 * db / g1;
  } else {
    dg = rho2 / (beta + gamma * g1 / g2);
    da = g0 * dg / g2;
    db = -g1 * dg / g2;
  }
  return basis.world(Vec3(da, db, dg));
}

inline PreseamSample preseam_sample(const PlacedPair& pair, const Basis& basis, double phi) {
  const auto p = preseam_point(pair, basis, phi);
  return {phi, p.s, preseam_tangent(pair, basis, phi, p.s), p.residual};
}

struct TracePolicy {
  int initial_samples = 64;
  /// Refine where consecutive tangents turn by more than this (radians).
  double max_turn = 0.05;
  int max_samples = 4096;
};

struct PreseamCurve {
  std::vector<PreseamSample> samples;  // phi ascending in [0, 2pi)
  Basis basis;
  PlacedPair pair;
  bool closed = false;
  double wrap_point_error = 0.0;
  double wrap_tangent_error = 0.0;
};

namespace detail {

inline double tangent_turn(const Vec3& a, const Vec3& b) { return angle_between(a, b); }

}  // namespace detail

inline PreseamCurve trace_pair(const PlacedPair& pair, const Basis& basis, const TracePolicy& policy = {}) {
  PreseamCurve curve;
  curve.basis = basis;
  curve.pair = pair;
  const int n0 = std::max(policy.initial_samples, 3);
  std::vector<PreseamSample> samples;
  samples.reserve(static_cast<std::size_t>(n0));
  for (int k = 0; k < n0; ++k) samples.push_back(preseam_sample(pair, basis, kTwoPi * k / n0));

  for (;;) {
    std::vector<PreseamSample> refined;
    refined.reserve(samples.size() * 2);
    bool changed = false;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      refined.push_back(samples[k]);
      const auto& a = samples[k];
      const auto& b = samples[(k + 1) % samples.size()];
      const double phi_b = (k + 1 == samples.size()) ? b.phi + kTwoPi : b.phi;
      const bool room = samples.size() + (refined.size() - k - 1) < static_cast<std::size_t>(policy.max_samples);
      if (room && detail::tangent_turn(a.tangent, b.tangent) > policy.max_turn) {
        refined.push_back(preseam_sample(pair, basis, 0.5 * (a.phi + phi_b)));
        changed = true;
      }
    }
    samples = std::move(refined);
    if (!changed) break;
  }

  const auto wrap = preseam_sample(pair, basis, kTwoPi);
  curve.wrap_point_error = (wrap.point - samples.front().point).norm();
  curve.wrap_tangent_error = (wrap.tangent - samples.front().tangent).norm();
  curve.closed = curve.wrap_point_error <= 1e-9;
  curve.samples = std::move(samples);
  return curve;
}

inline PreseamCurve trace_preseam(const PairDescriptor& d, const TracePolicy& policy = {}) {
  return trace_pair(place_pair(d), d.basis(), policy);
}

namespace detail {

/// Number of times the polyline crosses the half-plane {alpha v0 + beta u : beta >= 0}.
inline int half_plane_crossings(const std::vector<PreseamSample>& samples, const Vec3& v0, const Vec3& u) {
  const Vec3 normal = v0.cross(u);
  int count = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Vec3& a = samples[k].point;
    const Vec3& b = samples[(k + 1) % samples.size()].point;
    const double sa = a.dot(normal);
    const double sb = b.dot(normal);
    if ((sa >= 0.0) == (sb >= 0.0)) continue;
    const Vec3 x = a + (sa / (sa - sb)) * (b - a);
    if (x.dot(u) > 0.0) ++count;
  }
  return count;
}

}  // namespace detail

/// Re-indexes the curve by angle about a nearby axis v0p, solving each new
/// half-plane against the original pair.
inline PreseamCurve reparametrize(const PreseamCurve& curve, const Vec3& v0p, const Vec3& v1p,
                                  double max_tilt = 10.0 * kPi / 180.0) {
  if (std::abs(v0p.dot(v1p)) > 1e-12) {
    throw Error(ErrorCode::degenerate_input, "new axes must be orthogonal");
  }
  const double tilt = angle_between(v0p, curve.basis.v0);
  if (tilt >= max_tilt) {
    throw Error(ErrorCode::axis_too_far, "axis tilt " + std::to_string(tilt) + " rad exceeds " +
                                             std::to_string(max_tilt));
  }
  const Basis basis = Basis::from(v0p, v1p);
  PreseamCurve out;
  out.basis = basis;
  out.pair = curve.pair;
  out.samples.reserve(curve.samples.size());
  for (const auto& old : curve.samples) {
    const double rho = old.phi;
    const Vec3 u = std::cos(rho) * basis.v1 + std::sin(rho) * basis.v2;
    const int hits = detail::half_plane_crossings(curve.samples, basis.v0, u);
    if (hits != 1) {
      throw Error(ErrorCode::axis_too_far, "half-plane at rho=" + std::to_string(rho) + " meets the curve " +
                                               std::to_string(hits) + " times");
    }
    out.samples.push_back(preseam_sample(curve.pair, basis, rho));
  }
  const auto wrap = preseam_sample(curve.pair, basis, kTwoPi);
  out.wrap_point_error = (wrap.point - out.samples.front().point).norm();
  out.wrap_tangent_error = (wrap.tangent - out.samples.front().tangent).norm();
  out.closed = out.wrap_point_error <= 1e-9;
  return out;
}

struct ProbeRow {
  double delta = 0.0;
  double sup_distance = 0.0;
  double sup_tangent_distance = 0.0;
};

/// Which descriptor components a continuity probe perturbs.
struct ProbeComponents {
  bool f0 = true;
  bool f1 = true;
  bool v0 = true;
  bool t = true;
  bool v1 = true;
};

struct ProbeOptions {
  ProbeComponents components;
  std::uint64_t seed = 1;
  int samples = 128;
};

/// Descriptor moved by delta along fixed pseudo-random directions (the same
/// directions for every delta, so the distances scale with delta).
inline PairDescriptor perturb_descriptor(const PairDescriptor& d, double delta, const ProbeOptions& options) {
  Rng rng(options.seed);
  const Vec3 da0 = rng.unit_vector();
  const Vec3 da1 = rng.unit_vector();
  const Vec3 axis = (rng.unit_vector().cross(d.v0)).normalized();
  const double spin = rng.uniform() < 0.5 ? -1.0 : 1.0;

  PairDescriptor p = d;
  const auto& c = options.components;
  if (c.f0) p.f0 = make_ellipsoid_model(d.f0.semiaxes + delta * da0, d.f0.u0, d.f0.u1, d.f0.rotation);
  if (c.f1) p.f1 = make_ellipsoid_model(d.f1.semiaxes + delta * da1, d.f1.u0, d.f1.u1, d.f1.rotation);
  if (c.v0) {
    const Mat3 R = rotation_about(axis, delta);
    p.v0 = (R * d.v0).normalized();
    p.v1 = R * d.v1;
    p.v1 = (p.v1 - p.v1.dot(p.v0) * p.v0).normalized();
  }
  if (c.v1) {
    p.v1 = rotation_about(p.v0, spin * delta) * p.v1;
    p.v1 = (p.v1 - p.v1.dot(p.v0) * p.v0).normalized();
  }
  if (c.t) p.t = d.t + delta;
  return p;
}

inline std::vector<ProbeRow> continuity_probe(const PairDescriptor& d, const std::vector<double>& deltas,
                                              const ProbeOptions& options = {}) {
  TracePolicy fixed;
  fixed.initial_samples = options.samples;
  fixed.max_turn = std::numeric_limits<double>::infinity();
  const auto reference = trace_preseam(d, fixed);

  std::vector<ProbeRow> rows;
  for (double delta : deltas) {
    ProbeRow row{delta, 0.0, 0.0};
    if (delta > 0.0) {
      const auto curve = trace_preseam(perturb_descriptor(d, delta, options), fixed);
      for (std::size_t k = 0; k < reference.samples.size(); ++k) {
        row.sup_distance =
            std::max(row.sup_distance, (curve.samples[k].point - reference.samples[k].point).norm());
        row.sup_tangent_distance =
            std::max(row.sup_tangent_distance, (curve.samples[k].tangent - reference.samples[k].tangent).norm());
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hullscope
