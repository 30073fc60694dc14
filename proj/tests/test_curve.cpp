#include "hullscope/curve.hpp"

#include <gtest/gtest.h>

using namespace hullscope;

namespace {

// Circle of latitude theta about e_z, counter-clockwise seen from +z.
CurveGenerator latitude_circle(double theta) {
  return [theta](double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    return CurveSample{phi, Vec3(c * std::cos(phi), c * std::sin(phi), s), Vec3(-c * std::sin(phi), c * std::cos(phi), 0)};
  };
}

ClosedCurve sampled(const CurveGenerator& g, int n) {
  std::vector<CurveSample> s;
  for (int i = 0; i < n; ++i) s.push_back(g(kTwoPi * i / n));
  return ClosedCurve(std::move(s), g);
}

double left_area(const ClosedCurve& c) {
  std::vector<Vec3> pts;
  for (const auto& s : c.samples()) pts.push_back(s.point);
  double a = geodesic_polygon_area(pts);
  for (std::size_t k = 0; k < c.size(); ++k) {
    a -= sliver_area(c, k, c.segment_start(k), c.segment_end(k), c.point(k), c.point(k + 1));
  }
  return a;
}

}  // namespace

TEST(Curve, WrapAngle) {
  EXPECT_DOUBLE_EQ(wrap_angle(-0.5), kTwoPi - 0.5);
  EXPECT_DOUBLE_EQ(wrap_angle(kTwoPi + 0.25), 0.25);
  EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
}

TEST(Curve, TurningAngleSign) {
  // Seen from outside at +x with +z up, +y points right.
  const Vec3 a(1, 0, -0.1), b(1, 0, 0), c(1, 0.1, 0);
  EXPECT_NEAR(turning_angle(a.normalized(), b, c.normalized()), -kPi / 2, 1e-2);
  EXPECT_NEAR(turning_angle(c.normalized(), b, a.normalized()), kPi / 2, 1e-2);
}

TEST(Curve, OctantArea) {
  const std::vector<Vec3> tri = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  EXPECT_NEAR(geodesic_polygon_area(tri), kPi / 2, 1e-12);
  EXPECT_NEAR(fan_area(tri, -Vec3(1, 1, 1).normalized()), kPi / 2 - kFourPi, 1e-12);
  const std::vector<Vec3> rev = {Vec3::UnitZ(), Vec3::UnitY(), Vec3::UnitX()};
  EXPECT_NEAR(geodesic_polygon_area(rev), kFourPi - kPi / 2, 1e-12);
}

TEST(Curve, PolygonContains) {
  const std::vector<Vec3> tri = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  EXPECT_TRUE(polygon_contains(tri, Vec3(1, 1, 1).normalized()));
  EXPECT_FALSE(polygon_contains(tri, -Vec3(1, 1, 1).normalized()));
  EXPECT_FALSE(polygon_contains(tri, Vec3(1, -0.1, 0.2).normalized()));
}

TEST(Curve, HermiteInterpolantAccuracy) {
  const auto g = latitude_circle(0.4);
  const auto c = sampled(g, 64);
  for (int i = 0; i < 1000; ++i) {
    const double phi = kTwoPi * (i + 0.37) / 1000;
    EXPECT_LT((c.interpolate(phi).point - g(phi).point).norm(), 1e-5);
  }
  EXPECT_GT(c.max_sag(), 0.0);
  EXPECT_EQ(c.segment_of(0.0), 0u);
  EXPECT_EQ(c.segment_of(kTwoPi - 1e-9), 63u);
}

TEST(Curve, CapAreas) {
  for (double theta : {0.0, std::asin(1.0 / 9.0), 0.7, -0.5}) {
    const auto c = sampled(latitude_circle(theta), 256);
    EXPECT_NEAR(left_area(c), kTwoPi * (1 - std::sin(theta)), 1e-6) << theta;
  }
}

TEST(Curve, RotatedCopy) {
  const auto c = sampled(latitude_circle(0.3), 32);
  const Mat3 R = rotation_about(Vec3(1, 2, 0), 0.8);
  const auto r = c.rotated(R);
  EXPECT_LT((r.evaluate(1.0).point - R * c.evaluate(1.0).point).norm(), 1e-15);
  EXPECT_NEAR(left_area(r), left_area(c), 1e-12);
}
