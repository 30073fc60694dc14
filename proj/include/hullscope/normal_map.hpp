#pragma once

// Outward unit normal map of a body boundary and its right inverse, the
// support point in a given direction.

#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"
#include "hullscope/models.hpp"

namespace hullscope {

struct SupportSolution {
  Vec3 point = Vec3::Zero();
  /// Lagrange multiplier: grad f = multiplier * omega at the solution.
  double multiplier = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

inline Vec3 outward_normal(const Body& body, const Vec3& p) {
  const Vec3 g = evaluate(body, p).gradient;
  const double n = g.norm();
  if (n < 1e-12) throw Error(ErrorCode::zero_gradient, "gradient vanishes at the query point");
  return g / n;
}

namespace detail {

inline double kkt_residual(const Evaluation& e, const Vec3& w, double lambda) {
  return std::max((e.gradient - lambda * w).cwiseAbs().maxCoeff(), std::abs(e.value - 1.0));
}

}  // namespace detail

/// Newton on the Lagrange system {grad f(x) = lambda w, f(x) = 1} in the
/// model frame, started from the closed-form support point of the
/// unsaturated quadratic.
inline SupportSolution support_point(const Body& body, const Vec3& omega) {
  constexpr int kMaxIterations = 50;
  constexpr double kTolerance = 1e-12;

  const double len = omega.norm();
  if (!(len > 0.0)) throw Error(ErrorCode::degenerate_input, "support direction is zero");
  const Vec3 w = omega / len;
  const ModelFunction& m = body.model;

  const Mat3 R = m.rotation.toRotationMatrix();
  const Vec3 sq = m.semiaxes.cwiseProduct(m.semiaxes);
  const Vec3 Minv_w = R * sq.asDiagonal() * (R.transpose() * w);
  Vec3 x = Minv_w / std::sqrt(w.dot(Minv_w));
  Evaluation e = evaluate(m, x);
  double lambda = w.dot(e.gradient);
  double residual = detail::kkt_residual(e, w, lambda);

  int it = 0;
  while (residual > kTolerance && it < kMaxIterations) {
    ++it;
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J.topLeftCorner<3, 3>() = e.hessian;
    J.block<3, 1>(0, 3) = -w;
    J.block<1, 3>(3, 0) = e.gradient.transpose();
    Eigen::Vector4d F;
    F.head<3>() = e.gradient - lambda * w;
    F(3) = e.value - 1.0;
    const Eigen::Vector4d step = J.fullPivLu().solve(-F);

    double scale = 1.0;
    Vec3 xn;
    Evaluation en;
    for (int damp = 0; damp < 30; ++damp) {
      xn = x + scale * step.head<3>();
      en = evaluate(m, xn);
      if (en.value >= 0.5 && en.value < 2.0) break;
      scale *= 0.5;
    }
    x = xn;
    e = en;
    lambda += scale * step(3);
    residual = detail::kkt_residual(e, w, lambda);
  }
  if (residual > kTolerance) {
    throw Error(ErrorCode::no_convergence,
                "support point Newton residual " + std::to_string(residual) + " after " +
                    std::to_string(it) + " iterations");
  }
  return {x + body.translation, lambda, residual, it};
}

inline double support_value(const Body& body, const Vec3& omega) {
  const Vec3 w = omega.normalized();
  return w.dot(support_point(body, w).point);
}

}  // namespace hullscope
