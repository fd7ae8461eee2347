#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "vecflow/errors.hpp"

namespace vecflow {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Great-circle arc winding counterclockwise about `axis`, starting at
/// `start`. length lies in (0, 2pi]; 2pi is a full circle.
template <typename Scalar>
struct DirectedArc {
  Vec3<Scalar> axis;
  Vec3<Scalar> start;
  Scalar length;

  Vec3<Scalar> point_at(Scalar t) const { return start * std::cos(t) + axis.cross(start) * std::sin(t); }
  Vec3<Scalar> end() const { return point_at(length); }
};

using Arc = DirectedArc<double>;

enum class ArcEnd { start, end };

/// Direction of travel when leaving the arc's endpoint along the arc.
template <typename Scalar>
Vec3<Scalar> departure_tangent(const DirectedArc<Scalar>& arc, ArcEnd at) {
  if (arc.axis.norm() < Scalar(1e-12)) throw PreconditionError("degenerate_axis", "arc axis has zero length");
  if (at == ArcEnd::start) return arc.axis.cross(arc.start);
  return -arc.axis.cross(arc.end());
}

/// Angle between two tangent vectors, atan2 form for accuracy near 2pi/3.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar spherical_angle(const Eigen::MatrixBase<DerivedA>& t1, const Eigen::MatrixBase<DerivedB>& t2) {
  using Scalar = typename DerivedA::Scalar;
  const Vec3<Scalar> a = t1.normalized(), b = t2.normalized();
  const Scalar c = std::clamp(a.dot(b), Scalar(-1), Scalar(1));
  return std::atan2(a.cross(b).norm(), c);
}

/// Unit tangent at p of the minor arc from p toward q.
template <typename DerivedA, typename DerivedB>
Vec3<typename DerivedA::Scalar> tangent_toward(const Eigen::MatrixBase<DerivedA>& p, const Eigen::MatrixBase<DerivedB>& q) {
  return (q - q.dot(p) * p).normalized();
}

/// Minor arc from p to q (p != +-q).
template <typename Scalar>
DirectedArc<Scalar> minor_arc(const Vec3<Scalar>& p, const Vec3<Scalar>& q) {
  const Vec3<Scalar> axis = p.cross(q).normalized();
  return {axis, p, std::atan2(p.cross(q).norm(), std::clamp(p.dot(q), Scalar(-1), Scalar(1)))};
}

/// Point at colatitude theta, longitude phi.
template <typename Scalar>
Vec3<Scalar> spherical_point(Scalar theta, Scalar phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Counterclockwise angle about `axis` from a to b, in (0, 2pi].
template <typename Scalar>
Scalar ccw_length(const Vec3<Scalar>& axis, const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  Scalar t = std::atan2(axis.dot(a.cross(b)), std::clamp(a.dot(b), Scalar(-1), Scalar(1)));
  if (t <= Scalar(0)) t += 2 * std::numbers::pi_v<Scalar>;
  return t;
}

}  // namespace vecflow
