// Core geometric types shared by every module: 3-vectors, quaternions,
// rigid-body poses and timestamped values.
//
// Conventions (all modules conform to these):
//   - Quaternions are Hamilton-convention, scalar-first (w, x, y, z).
//   - normalize() canonicalizes the double cover by forcing w >= 0, so
//     state comparisons are deterministic.
//   - Poses map points from the local frame into the parent frame:
//     x_parent = R(q) * x_local + p.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mmrio {

inline constexpr double kPi = 3.14159265358979323846;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Error categories. CLI exit codes map ConfigError -> 2, DataError -> 3,
// anything else derived from Error -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, shapes or configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structurally unusable input data (empty, too short, disjoint in time).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Degenerate numerical situation (zero-norm quaternion, singular
/// covariance, aliased phase, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DegenerateQuaternionError : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidPoseError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// skew(v) * w == v.cross(w)
inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

/// Unit quaternion for rotations, stored scalar-first.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

  static Quaternion from_axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n <= 0.0 || !std::isfinite(n)) {
      throw DegenerateQuaternionError("from_axis_angle: zero or non-finite axis");
    }
    const double half = 0.5 * angle;
    const double s = std::sin(half) / n;
    return {std::cos(half), axis.x() * s, axis.y() * s, axis.z() * s};
  }

  /// Exponential map of a rotation vector (axis * angle).
  static Quaternion exp(const Vec3& rv) {
    const double angle = rv.norm();
    if (angle < 1e-12) {
      // First-order series; keeps exp smooth through zero.
      return Quaternion{1.0, 0.5 * rv.x(), 0.5 * rv.y(), 0.5 * rv.z()}.normalized();
    }
    return from_axis_angle(rv, angle);
  }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  double dot(const Quaternion& o) const {
    return w * o.w + x * o.x + y * o.y + z * o.z;
  }

  Quaternion conjugate() const { return {w, -x, -y, -z}; }

  /// Unit-norm copy, canonicalized to w >= 0. Throws on zero/non-finite norm.
  Quaternion normalized() const {
    const double n = norm();
    if (n <= 0.0 || !std::isfinite(n)) {
      throw DegenerateQuaternionError("normalize: quaternion norm is " +
                                      std::to_string(n));
    }
    const double s = (w < 0.0) ? -1.0 / n : 1.0 / n;
    return {w * s, x * s, y * s, z * s};
  }

  bool is_unit(double tol = 1e-6) const { return std::abs(norm() - 1.0) <= tol; }

  Mat3 rotation_matrix() const {
    const double ww = w * w, xx = x * x, yy = y * y, zz = z * z;
    Mat3 r;
    r << ww + xx - yy - zz, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
        2.0 * (x * y + w * z), ww - xx + yy - zz, 2.0 * (y * z - w * x),
        2.0 * (x * z - w * y), 2.0 * (y * z + w * x), ww - xx - yy + zz;
    return r;
  }

  /// Rotates v by this quaternion (q v q*), valid for unit q.
  Vec3 rotate(const Vec3& v) const {
    const Vec3 qv(x, y, z);
    const Vec3 t = 2.0 * qv.cross(v);
    return v + w * t + qv.cross(t);
  }

  /// Logarithm map to a rotation vector; requires unit norm.
  Vec3 log() const {
    const Quaternion q = normalized();
    const Vec3 qv(q.x, q.y, q.z);
    const double sn = qv.norm();
    if (sn < 1e-12) return 2.0 * qv;
    const double angle = 2.0 * std::atan2(sn, q.w);
    return (angle / sn) * qv;
  }
};

/// Hamilton product.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

/// Geodesic angle between two unit quaternions, in [0, pi]. Double-cover
/// safe: (q, -q) gives 0. Throws InvalidPoseError on non-unit input.
inline double rotation_angle_between(const Quaternion& a, const Quaternion& b) {
  if (!a.is_unit() || !b.is_unit()) {
    throw InvalidPoseError("rotation_angle_between: non-unit quaternion");
  }
  // Quarter-angle chord form: accurate near 0 (unlike acos of the dot
  // product) and exactly symmetric in (a, b).
  const double d1 = std::sqrt((a.w - b.w) * (a.w - b.w) + (a.x - b.x) * (a.x - b.x) +
                              (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
  const double d2 = std::sqrt((a.w + b.w) * (a.w + b.w) + (a.x + b.x) * (a.x + b.x) +
                              (a.y + b.y) * (a.y + b.y) + (a.z + b.z) * (a.z + b.z));
  return 4.0 * std::atan2(std::min(d1, d2), std::max(d1, d2));
}

/// Rigid-body pose: rotation then translation.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quaternion orientation = Quaternion::identity();

  static Pose identity() { return {}; }
};

namespace detail {
inline void require_unit(const Quaternion& q, const char* who) {
  if (!q.is_unit()) {
    throw InvalidPoseError(std::string(who) + ": orientation norm deviates by " +
                           std::to_string(std::abs(q.norm() - 1.0)));
  }
}
}  // namespace detail

inline Vec3 transform_point(const Pose& a, const Vec3& p) {
  detail::require_unit(a.orientation, "transform_point");
  return a.orientation.rotate(p) + a.position;
}

inline Pose pose_compose(const Pose& a, const Pose& b) {
  detail::require_unit(a.orientation, "pose_compose");
  detail::require_unit(b.orientation, "pose_compose");
  return {a.orientation.rotate(b.position) + a.position,
          a.orientation * b.orientation};
}

inline Pose pose_inverse(const Pose& a) {
  detail::require_unit(a.orientation, "pose_inverse");
  const Quaternion qi = a.orientation.conjugate();
  return {qi.rotate(-a.position), qi};
}

template <typename T>
struct Timestamped {
  double t = 0.0;  // seconds, monotonic
  T value{};
};

using Trajectory = std::vector<Timestamped<Pose>>;

}  // namespace mmrio
