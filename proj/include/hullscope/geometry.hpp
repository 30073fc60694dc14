#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hullscope {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

/// Right-handed orthonormal frame (v0, v1, v2 = v0 x v1).
struct Basis {
  Vec3 v0 = Vec3::UnitX();
  Vec3 v1 = Vec3::UnitY();
  Vec3 v2 = Vec3::UnitZ();

  static Basis from(const Vec3& v0, const Vec3& v1) {
    Basis b;
    b.v0 = v0.normalized();
    b.v1 = v1.normalized();
    b.v2 = b.v0.cross(b.v1);
    return b;
  }

  /// Unit direction in the half-plane at angle phi, elevated by theta towards v0.
  Vec3 direction(double theta, double phi) const {
    return std::sin(theta) * v0 + std::cos(theta) * (std::cos(phi) * v1 + std::sin(phi) * v2);
  }

  Vec3 coords(const Vec3& w) const { return {w.dot(v0), w.dot(v1), w.dot(v2)}; }
  Vec3 world(const Vec3& c) const { return c.x() * v0 + c.y() * v1 + c.z() * v2; }
};

/// A unit vector orthogonal to v, chosen from the coordinate axis least aligned with it.
inline Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 a = v.cwiseAbs();
  Vec3 e = Vec3::UnitX();
  if (a.y() <= a.x() && a.y() <= a.z()) {
    e = Vec3::UnitY();
  } else if (a.z() <= a.x() && a.z() <= a.y()) {
    e = Vec3::UnitZ();
  }
  return (e - e.dot(v) * v).normalized();
}

inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline Mat3 rotation_about(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

/// Signed area of the geodesic triangle (a, b, c) on the unit sphere;
/// positive when counter-clockwise seen from outside.
inline double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

/// Portable deterministic random source (bit-level reproducible across platforms).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; the second variate is discarded to keep the stream simple.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  Vec3 unit_vector() {
    for (;;) {
      Vec3 v(normal(), normal(), normal());
      const double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Radical-inverse low-discrepancy sequence.
inline double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

/// i-th of n points of a spherical Fibonacci lattice.
inline Vec3 fibonacci_sphere(std::size_t i, std::size_t n) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double a = golden * static_cast<double>(i);
  return {r * std::cos(a), r * std::sin(a), z};
}

/// Four-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563,
                                                      0.3399810435848563, 0.8611363115940526};
inline constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461,
                                                        0.6521451548625461, 0.3478548451374538};

}  // namespace hullscope
