#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "graspa/error.hpp"

namespace graspa {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// A rigid-body pose in the board frame: position in meters plus a rotation
/// matrix. All benchmark data (object placements, reach targets, grasps,
/// waypoints) is expressed this way.
struct Pose {
  Vector3d position = Vector3d::Zero();
  Matrix3d rotation = Matrix3d::Identity();

  static Pose identity() { return {}; }

  Vector3d apply(const Vector3d& x) const { return rotation * x + position; }

  Pose compose(const Pose& other) const {
    return {position + rotation * other.position, rotation * other.rotation};
  }

  Pose inverse() const {
    Matrix3d rt = rotation.transpose();
    return {-(rt * position), rt};
  }
};

constexpr double kOrthonormalityTol = 1e-6;

/// True when R is orthonormal with determinant one, within `tol` per entry.
inline bool is_rotation(const Matrix3d& r, double tol = kOrthonormalityTol) {
  Matrix3d delta = r.transpose() * r - Matrix3d::Identity();
  return delta.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

inline bool is_valid_pose(const Pose& pose, double tol = kOrthonormalityTol) {
  return pose.position.allFinite() && is_rotation(pose.rotation, tol);
}

inline Matrix3d rot_x(double angle) {
  return Eigen::AngleAxisd(angle, Vector3d::UnitX()).toRotationMatrix();
}
inline Matrix3d rot_y(double angle) {
  return Eigen::AngleAxisd(angle, Vector3d::UnitY()).toRotationMatrix();
}
inline Matrix3d rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Vector3d::UnitZ()).toRotationMatrix();
}
inline Matrix3d rot_about(const Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

/// Pose <-> the 16-number row-major homogeneous matrix used by every file
/// format in the suite.
inline std::array<double, 16> to_matrix16(const Pose& pose) {
  std::array<double, 16> m{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[static_cast<size_t>(r * 4 + c)] = pose.rotation(r, c);
    m[static_cast<size_t>(r * 4 + 3)] = pose.position(static_cast<int>(r));
  }
  m[12] = m[13] = m[14] = 0.0;
  m[15] = 1.0;
  return m;
}

inline Pose from_matrix16(const std::array<double, 16>& m) {
  Pose pose;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) pose.rotation(r, c) = m[static_cast<size_t>(r * 4 + c)];
    pose.position(r) = m[static_cast<size_t>(r * 4 + 3)];
  }
  return pose;
}

/// Position/orientation error between a desired and a reached pose.
///
/// `angle` is the geodesic angle of the relative rotation, in [0, pi].
/// `orientation_error` records sin(angle), saturated to 1 past pi/2 so the
/// reported value stays monotone in the angle.
struct PoseError {
  double position_error = 0.0;        // meters
  double angle = 0.0;                 // radians, [0, pi]
  double orientation_error = 0.0;     // dimensionless, [0, 1]
  Matrix3d relative_rotation = Matrix3d::Identity();
};

inline double position_error(const Pose& desired, const Pose& reached) {
  return (reached.position - desired.position).norm();
}

inline PoseError orientation_error(const Pose& desired, const Pose& reached) {
  PoseError err;
  err.position_error = position_error(desired, reached);
  err.relative_rotation = desired.rotation.transpose() * reached.rotation;
  double c = (err.relative_rotation.trace() - 1.0) / 2.0;
  c = std::clamp(c, -1.0, 1.0);
  err.angle = std::acos(c);
  err.orientation_error = err.angle <= M_PI_2 ? std::sin(err.angle) : 1.0;
  return err;
}

inline PoseError pose_error(const Pose& desired, const Pose& reached) {
  return orientation_error(desired, reached);
}

/// Threshold gate used by the reachability and calibration tests. The
/// orientation threshold is an angle in radians and compares against the
/// geodesic angle, not its sine; comparisons are inclusive.
inline bool is_reached(const Pose& desired, const Pose& reached, double tau_p,
                       double tau_o) {
  if (tau_p <= 0.0) throw Error(ErrorKind::Range, "position threshold must be > 0");
  if (tau_o <= 0.0 || tau_o > M_PI)
    throw Error(ErrorKind::Range, "orientation threshold must be in (0, pi]");
  PoseError err = pose_error(desired, reached);
  return err.position_error <= tau_p && err.angle <= tau_o;
}

}  // namespace graspa
