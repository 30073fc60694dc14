#pragma once

// Saturated-ellipsoid model bodies: f(x) = psi(x^T M x), where psi is the
// identity below the knot u0, a quintic Hermite blend on [u0, u1], and the
// constant 2 above u1. With u1 <= 2.25 * lambda_min(M) the field is constant
// outside the ball of radius 1.5, and the unit level set lies in the
// quadratic region, so near the boundary the Hessian is exactly 2M.

#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace hullscope {

enum class ModelKind { ellipsoid_saturated };

struct ModelFunction {
  ModelKind kind = ModelKind::ellipsoid_saturated;
  Vec3 semiaxes = Vec3::Ones();
  Quat rotation = Quat::Identity();
  Mat3 M = Mat3::Identity();
  double u0 = 1.2;
  double u1 = 2.0;
  /// Blend coefficients in the local variable tau = (u - u0) / (u1 - u0).
  std::array<double, 6> blend{};

  double min_eigenvalue() const {
    const double a = semiaxes.maxCoeff();
    return 1.0 / (a * a);
  }
};

struct Evaluation {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
  Mat3 hessian = Mat3::Zero();
};

/// Placement of a model: B = {x : f(x - translation) <= 1}.
struct Body {
  ModelFunction model;
  Vec3 translation = Vec3::Zero();
};

struct ValidationFailure {
  std::string check;
  Vec3 witness = Vec3::Zero();
};

struct ValidationReport {
  bool passed = true;
  std::vector<ValidationFailure> failures;

  void fail(std::string check, const Vec3& witness) {
    passed = false;
    failures.push_back({std::move(check), witness});
  }
};

namespace detail {

/// psi and its first two derivatives with respect to u.
struct BlendValue {
  double value;
  double d1;
  double d2;
};

inline BlendValue blend(const ModelFunction& m, double u) {
  if (u <= m.u0) return {u, 1.0, 0.0};
  if (u >= m.u1) return {2.0, 0.0, 0.0};
  const double h = m.u1 - m.u0;
  const double t = (u - m.u0) / h;
  const auto& c = m.blend;
  const double v = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  const double d1 = c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
  const double d2 = 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
  return {v, d1 / h, d2 / (h * h)};
}

}  // namespace detail

inline double blend_value(const ModelFunction& m, double u) { return detail::blend(m, u).value; }

/// Builds a saturated ellipsoid with the given semiaxes, optionally rotated.
inline ModelFunction make_ellipsoid_model(const Vec3& semiaxes, double u0, double u1,
                                          const Quat& rotation = Quat::Identity()) {
  if (!(semiaxes.minCoeff() > 0.0)) {
    throw Error(ErrorCode::degenerate_axes, "semiaxes must be positive");
  }
  ModelFunction m;
  m.semiaxes = semiaxes;
  m.rotation = rotation.normalized();
  const Mat3 R = m.rotation.toRotationMatrix();
  const Vec3 inv_sq = semiaxes.cwiseProduct(semiaxes).cwiseInverse();
  m.M = R * inv_sq.asDiagonal() * R.transpose();
  m.u0 = u0;
  m.u1 = u1;

  const double bound = 2.25 * m.min_eigenvalue();
  if (!(u0 > 1.0) || !(u1 > u0)) {
    throw Error(ErrorCode::infeasible_knots, "knots must satisfy 1 < u0 < u1");
  }
  if (u1 > bound * (1.0 + 1e-12)) {
    throw Error(ErrorCode::infeasible_knots,
                "u1 = " + std::to_string(u1) + " exceeds 2.25*lambda_min = " + std::to_string(bound));
  }
  const double rise = 2.0 - u0;
  const double h = u1 - u0;
  // The quintic blend is monotone on [u0, u1] iff rise >= 0.4 h.
  if (!(rise > 0.0) || rise < 0.4 * h) {
    throw Error(ErrorCode::infeasible_knots, "blend would not be monotone for these knots");
  }
  // Quintic Hermite: psi(u0)=u0, psi'(u0)=1, psi''(u0)=0, psi(u1)=2, psi'(u1)=psi''(u1)=0.
  m.blend = {u0, h, 0.0, 10.0 * rise - 6.0 * h, -15.0 * rise + 8.0 * h, 6.0 * rise - 3.0 * h};
  return m;
}

inline Evaluation evaluate(const ModelFunction& m, const Vec3& x) {
  Evaluation e;
  const Vec3 Mx = m.M * x;
  const double u = x.dot(Mx);
  if (u >= m.u1) {
    e.value = 2.0;
    return e;
  }
  const auto b = detail::blend(m, u);
  e.value = b.value;
  e.gradient = 2.0 * b.d1 * Mx;
  e.hessian = 2.0 * b.d1 * m.M + 4.0 * b.d2 * Mx * Mx.transpose();
  return e;
}

inline Evaluation evaluate(const Body& body, const Vec3& x) {
  return evaluate(body.model, x - body.translation);
}

namespace detail {

inline Vec3 ball_sample(std::size_t i, double radius) {
  // Halton points in the cube, folded into the ball by radial scaling of the
  // cube's inscribed directions; deterministic and reasonably uniform.
  const Vec3 c(2.0 * halton(i + 1, 2) - 1.0, 2.0 * halton(i + 1, 3) - 1.0, 2.0 * halton(i + 1, 5) - 1.0);
  const double n = c.norm();
  if (n < 1e-15) return Vec3::Zero();
  const double r = std::cbrt(halton(i + 1, 7));
  return radius * r * c / n;
}

/// Radius along a unit ray at which f reaches level (f is monotone along rays).
inline double ray_level(const ModelFunction& m, const Vec3& dir, double level) {
  double lo = 0.0;
  double hi = 1.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (evaluate(m, mid * dir).value < level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline ValidationReport validate_model(const ModelFunction& m, std::size_t samples) {
  ValidationReport report;
  samples = std::max<std::size_t>(samples, 100);

  if (!(evaluate(m, Vec3::Zero()).value < 1.0)) report.fail("origin-interior", Vec3::Zero());

  for (std::size_t i = 0; i < samples; ++i) {
    const Vec3 x = (1.5 + halton(i + 1, 2)) * fibonacci_sphere(i, samples);
    const auto e = evaluate(m, x);
    if (e.value != 2.0 || !e.gradient.isZero(0.0) || !e.hessian.isZero(0.0)) {
      report.fail("saturation", x);
      break;
    }
  }

  bool shell_ok = true;
  const auto check_shell = [&](const Vec3& x) {
    const auto e = evaluate(m, x);
    if (e.value < 0.9 || e.value > 1.1) return;
    if (e.gradient.norm() < 1e-12) {
      report.fail("shell-gradient-nonzero", x);
      shell_ok = false;
      return;
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(e.hessian, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
      report.fail("shell-hessian-pd", x);
      shell_ok = false;
    }
  };
  for (std::size_t i = 0; i < samples && shell_ok; ++i) {
    const Vec3 dir = fibonacci_sphere(i, samples);
    for (double level : {0.9, 1.0, 1.1}) check_shell(detail::ray_level(m, dir, level) * dir);
    check_shell(detail::ball_sample(i, 1.5));
  }

  // Two-sided finite differences of psi at each knot (second-order one-sided stencils).
  const double hb = m.u1 - m.u0;
  const double rise = 2.0 - m.u0;
  const double step = 1e-4 * hb;
  const double tol0 = 1e-6;
  const double tol1 = 1e-6 * std::max(1.0, rise / hb);
  const double tol2 = 1e-3 * std::max(1.0, rise / (hb * hb));
  const Vec3 axis = m.rotation.toRotationMatrix().col(0) * m.semiaxes.x();
  const auto knot_check = [&](double k, const std::string& name) {
    const auto psi = [&](double u) { return blend_value(m, u); };
    const double f0 = psi(k);
    const double l1 = psi(k - step), l2 = psi(k - 2 * step), l3 = psi(k - 3 * step);
    const double r1 = psi(k + step), r2 = psi(k + 2 * step), r3 = psi(k + 3 * step);
    const double left0 = 3 * l1 - 3 * l2 + l3;
    const double right0 = 3 * r1 - 3 * r2 + r3;
    const double left1 = (3 * f0 - 4 * l1 + l2) / (2 * step);
    const double right1 = (-3 * f0 + 4 * r1 - r2) / (2 * step);
    const double left2 = (2 * f0 - 5 * l1 + 4 * l2 - l3) / (step * step);
    const double right2 = (2 * f0 - 5 * r1 + 4 * r2 - r3) / (step * step);
    if (std::abs(left0 - f0) > tol0 || std::abs(right0 - f0) > tol0 ||
        std::abs(left1 - right1) > tol1 || std::abs(left2 - right2) > tol2) {
      report.fail(name, std::sqrt(k) * axis);
    }
  };
  knot_check(m.u0, "knot-continuity-u0");
  knot_check(m.u1, "knot-continuity-u1");

  for (int i = 0; i <= 200; ++i) {
    const double u = m.u0 + hb * i / 200.0;
    if (detail::blend(m, u).d1 < -1e-12) {
      report.fail("blend-monotone", std::sqrt(u) * axis);
      break;
    }
  }
  return report;
}

/// Sampled C2 distance: max of the value, gradient and Hessian (spectral norm)
/// differences. A lower bound on the true supremum.
inline double c2_distance(const ModelFunction& a, const ModelFunction& b, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 100);
  double worst = 0.0;
  const auto probe = [&](const Vec3& x) {
    const auto ea = evaluate(a, x);
    const auto eb = evaluate(b, x);
    const Mat3 dh = ea.hessian - eb.hessian;
    Eigen::SelfAdjointEigenSolver<Mat3> eig(dh, Eigen::EigenvaluesOnly);
    worst = std::max({worst, std::abs(ea.value - eb.value), (ea.gradient - eb.gradient).norm(),
                      eig.eigenvalues().cwiseAbs().maxCoeff()});
  };
  for (std::size_t i = 0; i < samples; ++i) probe(detail::ball_sample(i, 1.5));
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = -30; k <= 30; ++k) probe(Vec3::Unit(axis) * (1.5 * k / 30.0));
  }
  return worst;
}

}  // namespace hullscope
