// Copyright 2026 The uvface Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UVFACE_POSE_H_
#define UVFACE_POSE_H_

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "uvface/mesh.h"

namespace uvface {

// Similarity transform x -> scale * rotation * x + translation.
struct PoseTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static PoseTransform identity() { return {}; }

  // (1/f, R^T, -R^T t / f).
  PoseTransform inverse() const;

  Eigen::Vector3d apply(const Eigen::Vector3d& x) const {
    return scale * (rotation * x) + translation;
  }
  Eigen::Matrix3Xd apply(const Eigen::Matrix3Xd& points) const;
};

inline constexpr double kRotationTolerance = 1e-10;

bool is_rotation(const Eigen::Matrix3d& r, double tol = kRotationTolerance);

// Throws kInvalidArgument when f <= 0 or R is not a proper rotation.
void validate(const PoseTransform& pose);

// S = mean + D, vertexwise. Topology is taken from `mean`.
FaceMesh compose_shape(const FaceMesh& mean, const Eigen::Matrix3Xd& deformation);

// G_i = f R S_i + t.
FaceMesh apply_pose(const FaceMesh& shape, const PoseTransform& pose);

// Weak perspective: drops z.
Eigen::Matrix2Xd project(const Eigen::Matrix3Xd& points);
inline Eigen::Matrix2Xd project(const FaceMesh& mesh) {
  return project(mesh.vertices);
}

// Degrees. R = Rx(pitch) * Ry(yaw) * Rz(roll); yaw is the middle axis so
// the decomposition degenerates at |yaw| = 90.
struct EulerAngles {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  bool gimbal_locked = false;
};

inline constexpr double kDefaultLockToleranceDeg = 0.5;

Eigen::Matrix3d euler_to_rotation(const EulerAngles& angles);

// Inverse of euler_to_rotation. When |yaw| is within `lock_tol_deg` of 90
// the pitch/roll split is not observable; roll is then pinned to zero and
// gimbal_locked is set. Throws kInvalidArgument for a non-rotation.
EulerAngles rotation_to_euler(const Eigen::Matrix3d& r,
                              double lock_tol_deg = kDefaultLockToleranceDeg);

// Text form: `f`, three rows of R, `t`; 17 significant digits.
std::string format_pose(const PoseTransform& pose);
PoseTransform parse_pose(const std::string& text);

}  // namespace uvface

#endif  // UVFACE_POSE_H_
