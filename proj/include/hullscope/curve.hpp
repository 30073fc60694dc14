#pragma once

// Closed C1 curve on the unit sphere, stored as samples (phi, point, tangent)
// over one period. Between samples the curve is the normalized cubic Hermite
// interpolant in phi; an optional generator re-evaluates the exact curve for
// metric refinements.

#include "hullscope/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <memory>
#include <vector>

namespace hullscope {

struct CurveSample {
  double phi = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 tangent = Vec3::Zero();  // d point / d phi
};

using CurveGenerator = std::function<CurveSample(double)>;

inline double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

class ClosedCurve {
 public:
  ClosedCurve() = default;
  ClosedCurve(std::vector<CurveSample> samples, CurveGenerator generator = {})
      : samples_(std::move(samples)), generator_(std::move(generator)) {
    compute_sag();
  }

  std::size_t size() const { return samples_.size(); }
  const std::vector<CurveSample>& samples() const { return samples_; }
  const CurveSample& sample(std::size_t k) const { return samples_[k % samples_.size()]; }
  const Vec3& point(std::size_t k) const { return sample(k).point; }
  bool has_generator() const { return static_cast<bool>(generator_); }
  const CurveGenerator& generator() const { return generator_; }

  /// Parameter interval [start, end) of segment k, with end unwrapped past 2pi.
  double segment_start(std::size_t k) const { return samples_[k].phi; }
  double segment_end(std::size_t k) const {
    return k + 1 == samples_.size() ? samples_.front().phi + kTwoPi : samples_[k + 1].phi;
  }

  /// Upper estimate of the distance between chord k and the curve.
  double sag(std::size_t k) const { return sag_[k]; }
  double max_sag() const { return sag_.empty() ? 0.0 : *std::max_element(sag_.begin(), sag_.end()); }

  /// Segment containing parameter phi (any real; reduced modulo 2pi).
  std::size_t segment_of(double phi) const {
    const double w = wrap_angle(phi);
    if (w < samples_.front().phi) return samples_.size() - 1;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), w,
                               [](double v, const CurveSample& s) { return v < s.phi; });
    return static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1;
  }

  /// Hermite interpolant of segment k evaluated at phi (may extrapolate slightly).
  CurveSample hermite(std::size_t k, double phi) const {
    const auto& a = samples_[k];
    const auto& b = sample(k + 1);
    const double start = segment_start(k);
    const double h = segment_end(k) - start;
    // Bring phi into the segment's unwrapped frame.
    double local = phi - start;
    local -= kTwoPi * std::round((local - 0.5 * h) / kTwoPi);
    const double t = local / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
    const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
    const Vec3 P = h00 * a.point + h10 * h * a.tangent + h01 * b.point + h11 * h * b.tangent;
    const Vec3 dP = (d00 * a.point + d10 * h * a.tangent + d01 * b.point + d11 * h * b.tangent) / h;
    const double n = P.norm();
    const Vec3 y = P / n;
    return {phi, y, (dP - y * y.dot(dP)) / n};
  }

  CurveSample interpolate(double phi) const { return hermite(segment_of(phi), phi); }

  /// Exact curve when a generator is present, otherwise the interpolant.
  CurveSample evaluate(double phi) const { return generator_ ? generator_(phi) : interpolate(phi); }

  /// Copy rotated by R (samples and generator).
  ClosedCurve rotated(const Mat3& R) const {
    std::vector<CurveSample> s = samples_;
    for (auto& c : s) {
      c.point = (R * c.point).normalized();
      c.tangent = R * c.tangent;
    }
    CurveGenerator g;
    if (generator_) {
      g = [inner = generator_, R](double phi) {
        CurveSample c = inner(phi);
        c.point = (R * c.point).normalized();
        c.tangent = R * c.tangent;
        return c;
      };
    }
    return ClosedCurve(std::move(s), std::move(g));
  }

 private:
  void compute_sag() {
    sag_.assign(samples_.size(), 0.0);
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      const double mid = 0.5 * (segment_start(k) + segment_end(k));
      const Vec3 c = hermite(k, mid).point;
      const Vec3& a = samples_[k].point;
      const Vec3& b = sample(k + 1).point;
      const Vec3 n = a.cross(b);
      const double nn = n.norm();
      const double off = nn > 1e-300 ? std::abs(c.dot(n / nn)) : (c - a).norm();
      // Quadratic sag profile; the factor covers asymmetric bulges.
      sag_[k] = 1.5 * off + 1e-12;
    }
  }

  std::vector<CurveSample> samples_;
  CurveGenerator generator_;
  std::vector<double> sag_;
};

/// Signed area between the geodesic chord a->b and the curve piece over
/// [phi_a, phi_b] of segment k, positive where the curve lies left of the chord.
inline double sliver_area(const ClosedCurve& curve, std::size_t k, double phi_a, double phi_b, const Vec3& a,
                          const Vec3& b) {
  const Vec3 cr = a.cross(b);
  const double len = cr.norm();
  if (len < 1e-14) return 0.0;
  const Vec3 n = cr / len;
  const Vec3 e1 = a;
  const Vec3 e2 = n.cross(a);
  const double mid = 0.5 * (phi_a + phi_b);
  const double half = 0.5 * (phi_b - phi_a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const auto c = curve.hermite(k, mid + half * kGaussNodes[i]);
    const double x1 = c.point.dot(e1), x2 = c.point.dot(e2);
    const double dx = (x1 * c.tangent.dot(e2) - x2 * c.tangent.dot(e1)) / (x1 * x1 + x2 * x2);
    sum += kGaussWeights[i] * c.point.dot(n) * dx;
  }
  return sum * half;
}

/// Exterior turning angle at b of the geodesic path a -> b -> c (left positive).
inline double turning_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  // (p x q) x q is the forward tangent at q of the geodesic p -> q.
  const Vec3 tin = a.cross(b).cross(b);
  const Vec3 tout = -c.cross(b).cross(b);
  return std::atan2(b.dot(tin.cross(tout)), tin.dot(tout));
}

/// Area to the left of a closed geodesic polygon (Gauss-Bonnet).
inline double geodesic_polygon_area(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) turn += turning_angle(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
  return kTwoPi - turn;
}

/// Signed fan area of a closed polygon seen from centre c:
/// the left area when -c lies to the right, minus 4pi when -c lies to the left.
inline double fan_area(const std::vector<Vec3>& pts, const Vec3& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) sum += signed_triangle_area(c, pts[i], pts[(i + 1) % pts.size()]);
  return sum;
}

/// True when x lies left of the closed polygon (interior on the left).
inline bool polygon_contains(const std::vector<Vec3>& pts, const Vec3& x) { return fan_area(pts, -x) < 0.0; }

/// Distance from x to the geodesic chord a-b (chordal metric, small-angle regime).
inline double chord_distance(const Vec3& a, const Vec3& b, const Vec3& x) {
  const Vec3 cr = a.cross(b);
  const double len = cr.norm();
  if (len > 1e-15) {
    const Vec3 n = cr / len;
    const Vec3 proj = x - x.dot(n) * n;
    if (a.cross(proj).dot(n) >= 0.0 && proj.cross(b).dot(n) >= 0.0 && proj.dot(a + b) > 0.0) {
      return std::abs(x.dot(n));
    }
  }
  return std::min((x - a).norm(), (x - b).norm());
}

}  // namespace hullscope
