#include "hullscope/discs.hpp"

#include <gtest/gtest.h>

using namespace hullscope;

namespace {

ModelFunction sphere(double r = 1.0) { return make_ellipsoid_model({r, r, r}, 1.2, 2.0); }

Quat about(const Vec3& axis, double angle) { return Quat(Eigen::AngleAxisd(angle, axis.normalized())); }

// Cap of angular radius r centred on c.
SphericalDisc cap(const Vec3& c, double r, int label) {
  const Quat q = Quat::FromTwoVectors(Vec3::UnitX(), c.normalized());
  return synthetic_disc(kPi / 2 - r, {}, q, label);
}

SphericalDisc wiggly(int label, double turn) {
  return synthetic_disc(0.0, {{2, 0.3, 0.0}}, about(Vec3::UnitX(), turn), label);
}

}  // namespace

TEST(Discs, GreatCircleArea) {
  const auto d = synthetic_disc(0.0, {}, Quat::Identity(), 0);
  EXPECT_NEAR(disc_area(d), kTwoPi, 1e-9);
  EXPECT_TRUE(disc_contains(d, Vec3::UnitX()));
  EXPECT_FALSE(disc_contains(d, -Vec3::UnitX()));
}

TEST(Discs, CapAreaAndOrientation) {
  const auto d = cap(Vec3(0, 1, 1), 0.6, 3);
  EXPECT_NEAR(disc_area(d), kTwoPi * (1 - std::cos(0.6)), 1e-6);
  EXPECT_TRUE(disc_contains(d, Vec3(0, 1, 1).normalized()));
  EXPECT_EQ(d.label, 3);
  // A point pushed left of the boundary lies inside.
  const auto s = d.boundary.sample(10);
  const Vec3 left = (s.point + 1e-3 * s.point.cross(s.tangent).normalized()).normalized();
  EXPECT_TRUE(disc_contains(d, left));
}

TEST(Discs, WigglyIsSimple) { EXPECT_NO_THROW(wiggly(0, 0.0)); }

TEST(Discs, NotSimple) {
  try {
    synthetic_disc(0.1, {{2, 1.5, 0.0}}, Quat::Identity(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_simple);
  }
}

TEST(Discs, HiddenDiscCongruentSpheres) {
  PairDescriptor d;
  d.f0 = sphere();
  d.f1 = sphere();
  d.t = 3;
  const auto disc = hidden_disc(d);
  EXPECT_NEAR(disc_area(disc), kTwoPi, 1e-6);
  EXPECT_TRUE(disc_contains(disc, Vec3(1, 0.2, 0.1).normalized()));
  EXPECT_FALSE(disc_contains(disc, Vec3(-1, 0.2, 0.1).normalized()));
}

TEST(Discs, HiddenDiscUnequalSpheres) {
  PairDescriptor d;
  d.f0 = sphere();
  d.f1 = sphere(0.5);
  d.t = 3;
  EXPECT_NEAR(disc_area(hidden_disc(d)), kTwoPi * (1 - 1.0 / 9.0), 1e-6);
}

TEST(Discs, HiddenDiscSwappedRoles) {
  PairDescriptor d;
  d.f0 = sphere(0.5);
  d.f1 = sphere();
  d.v0 = -Vec3::UnitX();
  d.v1 = Vec3::UnitY();
  d.t = 3;
  const auto disc = hidden_disc(d);
  // Cap about -e_x at latitude asin((0.5 - 1) / 4.5).
  EXPECT_NEAR(disc_area(disc), kTwoPi * (1 + 1.0 / 9.0), 1e-6);
  EXPECT_TRUE(disc_contains(disc, -Vec3::UnitX()));
}

TEST(Discs, GreatCirclesCrossTwice) {
  const auto a = synthetic_disc(0.0, {}, Quat::Identity(), 0);
  const auto b = synthetic_disc(0.0, {}, about(Vec3::UnitZ(), 0.9), 1);
  const auto xs = curve_intersections(a.boundary, b.boundary);
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_LT((xs[0].position + xs[1].position).norm(), 1e-12);
  for (const auto& x : xs) {
    EXPECT_TRUE(x.transversal);
    EXPECT_LT((a.boundary.evaluate(x.phi[0]).point - x.position).norm(), 1e-12);
    EXPECT_LT((b.boundary.evaluate(x.phi[1]).point - x.position).norm(), 1e-12);
  }
}

TEST(Discs, DisjointCapsDoNotCross) {
  EXPECT_TRUE(curve_intersections(cap(Vec3::UnitX(), 0.5, 0).boundary, cap(-Vec3::UnitX(), 0.5, 1).boundary).empty());
}

TEST(Discs, WigglyPairCrossesFourTimes) {
  const auto xs = curve_intersections(wiggly(0, 0.0).boundary, wiggly(1, kPi / 2).boundary);
  EXPECT_EQ(xs.size(), 4u);
}

TEST(Discs, TangentialContactRejected) {
  // Two caps of radius pi/4 whose centres are pi/2 apart touch at one point.
  const auto a = cap(Vec3::UnitX(), kPi / 4, 0);
  const auto b = cap(Vec3::UnitY(), kPi / 4, 1);
  try {
    const auto xs = curve_intersections(a.boundary, b.boundary);
    // A tangency may also be missed entirely; it must never appear as transversal.
    EXPECT_TRUE(xs.empty());
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::tangential_contact);
  }
}

TEST(Discs, PerturbIdenticalGreatCircles) {
  const auto a = synthetic_disc(0.0, {}, Quat::Identity(), 0);
  const auto r = perturb_general_position({a, a}, 42);
  const auto n = r.crossings.count({0, 1}) ? r.crossings.at({0, 1}).size() : 0u;
  EXPECT_TRUE(n == 0 || n == 2) << n;
  for (const auto& [key, xs] : r.crossings)
    for (const auto& x : xs) EXPECT_TRUE(x.transversal);
}

TEST(Discs, PerturbGeneralInputIsSmall) {
  const std::vector<SphericalDisc> discs = {wiggly(0, 0.0), wiggly(1, kPi / 2)};
  const auto r = perturb_general_position(discs, 7);
  EXPECT_EQ(r.attempts, 1);
  for (double angle : r.rotation_angles) EXPECT_LE(angle, 1e-4);
  EXPECT_EQ(r.crossings.at({0, 1}).size(), 4u);
}

TEST(Discs, PerturbSingleDisc) {
  const auto r = perturb_general_position({cap(Vec3::UnitZ(), 0.4, 0)}, 1);
  ASSERT_EQ(r.discs.size(), 1u);
  EXPECT_TRUE(r.crossings.empty());
  EXPECT_LE(r.rotation_angles[0], 1e-4);
}

TEST(Discs, PerturbDeterministic) {
  const std::vector<SphericalDisc> discs = {cap(Vec3::UnitZ(), 0.8, 0), cap(Vec3::UnitX(), 0.9, 1)};
  const auto a = perturb_general_position(discs, 5);
  const auto b = perturb_general_position(discs, 5);
  EXPECT_EQ(a.rotation_angles, b.rotation_angles);
  EXPECT_EQ(a.discs[1].boundary.point(3), b.discs[1].boundary.point(3));
}

TEST(DiscsProperty, CrossingParity) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = synthetic_disc(rng.uniform(-0.5, 0.5), {{3, rng.uniform(0, 0.2), rng.uniform(0, kTwoPi)}},
                                  Quat(Eigen::AngleAxisd(rng.uniform(0, kPi), rng.unit_vector())), 0);
    const auto b = synthetic_disc(rng.uniform(-0.5, 0.5), {{2, rng.uniform(0, 0.3), rng.uniform(0, kTwoPi)}},
                                  Quat(Eigen::AngleAxisd(rng.uniform(0, kPi), rng.unit_vector())), 1);
    const auto r = perturb_general_position({a, b}, trial);
    for (const auto& [key, xs] : r.crossings) EXPECT_EQ(xs.size() % 2, 0u);
  }
}

TEST(DiscsProperty, PerturbationHausdorff) {
  const auto d = wiggly(0, 0.3);
  const auto r = perturb_general_position({d}, 9);
  double worst = 0.0;
  for (std::size_t k = 0; k < d.boundary.size(); ++k) {
    worst = std::max(worst, (r.discs[0].boundary.point(k) - d.boundary.point(k)).norm());
  }
  EXPECT_LE(worst, 2.0 * r.rotation_angles[0] + 1e-15);
}

TEST(DiscsProperty, WindingAgreesWithSignTest) {
  PairDescriptor d;
  d.f0 = make_ellipsoid_model({1.2, 0.9, 0.8}, 1.2, 1.5, about(Vec3(1, 1, 1), 0.6));
  d.f1 = make_ellipsoid_model({0.85, 1.1, 1.0}, 1.2, 1.5, about(Vec3(0, 1, -1), 1.2));
  d.v0 = Vec3(0.2, 1, -0.3).normalized();
  d.v1 = any_perpendicular(d.v0);
  d.t = 0.7;
  const auto pair = place_pair(d);
  const auto disc = hidden_disc(pair, d.basis(), 1);
  Rng rng(77);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 w = rng.unit_vector();
    const bool hidden = w.dot(q_vector(pair, w)) > 0.0;
    if (hidden != disc_contains(disc, w)) ++disagreements;
  }
  EXPECT_LE(disagreements, 1);
}
