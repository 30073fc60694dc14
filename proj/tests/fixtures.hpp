#pragma once

// Synthetic disc fixtures shared by the arrangement and acceptance tests.

#include "hullscope/discs.hpp"

#include <vector>

namespace fixtures {

using namespace hullscope;

inline Quat about(const Vec3& axis, double angle) { return Quat(Eigen::AngleAxisd(angle, axis.normalized())); }

/// Cap of angular radius r centred on c.
inline SphericalDisc cap(const Vec3& c, double r, int label, int samples = 256) {
  return synthetic_disc(kPi / 2 - r, {}, Quat::FromTwoVectors(Vec3::UnitX(), c.normalized()), label, samples);
}

/// theta(phi) = 0.3 cos(2 phi) about e_x, turned about e_x.
inline SphericalDisc wiggly(int label, double turn) {
  return synthetic_disc(0.0, {{2, 0.3, 0.0}}, about(Vec3::UnitX(), turn), label);
}

/// Two wiggly discs a quarter turn apart: four crossings, one crossway.
inline std::vector<SphericalDisc> crossway_pair() { return {wiggly(1, 0.0), wiggly(2, kPi / 2)}; }

/// Two caps crossing twice: one overlap.
inline std::vector<SphericalDisc> overlap_pair() {
  return {cap(Vec3(1, 0, 0.2), 0.7, 1), cap(Vec3(0.3, 1, -0.1), 0.8, 2)};
}

/// Three caps of radius 0.5 at colatitude 0.55, pairwise overlapping around a gap at the pole.
inline std::vector<SphericalDisc> cap_triangle() {
  std::vector<SphericalDisc> out;
  for (int k = 0; k < 3; ++k) {
    const double a = kTwoPi * k / 3.0 + 0.1;
    out.push_back(cap(Vec3(std::sin(0.55) * std::cos(a), std::sin(0.55) * std::sin(a), std::cos(0.55)), 0.5, k + 1));
  }
  return out;
}

/// Three great circles: the coordinate octants.
inline std::vector<SphericalDisc> octants() {
  return {cap(Vec3::UnitX(), kPi / 2, 1), cap(Vec3::UnitY(), kPi / 2, 2), cap(Vec3::UnitZ(), kPi / 2, 3)};
}

/// Elongated disc: angular radius a*b / sqrt((a cos)^2 + (b sin)^2) about the
/// centre, long axis along `along`, fitted by a cosine series.
inline SphericalDisc strip(const Vec3& centre, const Vec3& along, double a, double b, int label,
                           int harmonics = 40, int samples = 1024) {
  const int N = 4096;
  std::vector<double> rho(N);
  for (int i = 0; i < N; ++i) {
    const double phi = kTwoPi * i / N;
    rho[i] = a * b / std::sqrt(std::pow(a * std::cos(phi), 2) + std::pow(b * std::sin(phi), 2));
  }
  double mean = 0.0;
  for (double r : rho) mean += r;
  mean /= N;
  std::vector<FourierTerm> terms;
  for (int m = 1; m <= harmonics; ++m) {
    double c = 0.0;
    for (int i = 0; i < N; ++i) c += rho[i] * std::cos(2 * m * kTwoPi * i / N);
    c *= 2.0 / N;
    // theta = pi/2 - rho
    terms.push_back({2 * m, -c, 0.0});
  }
  // Frame: e_x -> centre, e_y -> along.
  Mat3 R;
  R.col(0) = centre.normalized();
  R.col(1) = (along - along.dot(R.col(0)) * R.col(0)).normalized();
  R.col(2) = R.col(0).cross(R.col(1));
  return synthetic_disc(kPi / 2 - mean, terms, Quat(R), label, samples);
}

/// Cap of radius 0.6 at e_z crossed by strips at the given offsets (radians, across the strip).
inline std::vector<SphericalDisc> banded_cap(const std::vector<double>& offsets) {
  std::vector<SphericalDisc> out{cap(Vec3::UnitZ(), 0.6, 1, 512)};
  int label = 2;
  for (double off : offsets) {
    const Vec3 c = rotation_about(Vec3::UnitX(), off) * Vec3::UnitZ();
    out.push_back(strip(c, Vec3::UnitX(), 0.12, 1.0, label++));
  }
  return out;
}

/// Analytic membership for synthetic discs: latitude about the rotated frame above theta(phi).
inline bool synthetic_contains(const SphericalDisc& d, const Vec3& x) {
  const auto& p = *d.synthetic;
  const Vec3 y = p.rotation.conjugate() * x;
  const double lat = std::asin(std::clamp(y.x(), -1.0, 1.0));
  const double phi = std::atan2(y.z(), y.y());
  double theta = p.base_latitude;
  for (const auto& t : p.terms) theta += t.amplitude * std::cos(t.k * phi + t.phase);
  return lat > theta;
}

}  // namespace fixtures
