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

#include "uvface/pose.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Geometry>

#include "uvface/errors.h"

namespace uvface {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

PoseTransform PoseTransform::inverse() const {
  PoseTransform inv;
  inv.scale = 1.0 / scale;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation) / scale;
  return inv;
}

Eigen::Matrix3Xd PoseTransform::apply(const Eigen::Matrix3Xd& points) const {
  Eigen::Matrix3Xd out = scale * (rotation * points);
  out.colwise() += translation;
  return out;
}

bool is_rotation(const Eigen::Matrix3d& r, double tol) {
  if (!r.allFinite()) return false;
  const double ortho =
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

void validate(const PoseTransform& pose) {
  if (!(pose.scale > 0.0) || !std::isfinite(pose.scale)) {
    fail(ErrorCode::kInvalidArgument, "pose scale must be positive");
  }
  if (!is_rotation(pose.rotation)) {
    fail(ErrorCode::kInvalidArgument, "pose rotation is not orthonormal");
  }
  if (!pose.translation.allFinite()) {
    fail(ErrorCode::kInvalidArgument, "pose translation is not finite");
  }
}

FaceMesh compose_shape(const FaceMesh& mean,
                       const Eigen::Matrix3Xd& deformation) {
  if (deformation.cols() != mean.vertices.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         "deformation has " + std::to_string(deformation.cols()) +
             " vertices, template has " +
             std::to_string(mean.vertices.cols()));
  }
  return mean.with_vertices(mean.vertices + deformation);
}

FaceMesh apply_pose(const FaceMesh& shape, const PoseTransform& pose) {
  validate(pose);
  return shape.with_vertices(pose.apply(shape.vertices));
}

Eigen::Matrix2Xd project(const Eigen::Matrix3Xd& points) {
  return points.topRows<2>();
}

Eigen::Matrix3d euler_to_rotation(const EulerAngles& angles) {
  const Eigen::Matrix3d rx =
      Eigen::AngleAxisd(angles.pitch * kDeg, Eigen::Vector3d::UnitX())
          .toRotationMatrix();
  const Eigen::Matrix3d ry =
      Eigen::AngleAxisd(angles.yaw * kDeg, Eigen::Vector3d::UnitY())
          .toRotationMatrix();
  const Eigen::Matrix3d rz =
      Eigen::AngleAxisd(angles.roll * kDeg, Eigen::Vector3d::UnitZ())
          .toRotationMatrix();
  return rx * ry * rz;
}

EulerAngles rotation_to_euler(const Eigen::Matrix3d& r, double lock_tol_deg) {
  if (!is_rotation(r)) {
    fail(ErrorCode::kInvalidArgument, "matrix is not a proper rotation");
  }
  // With R = Rx(a) Ry(b) Rz(c):
  //   R(0,2) = sin b,  R(1,2) = -sin a cos b,  R(2,2) = cos a cos b,
  //   R(0,1) = -cos b sin c,  R(0,0) = cos b cos c.
  EulerAngles out;
  const double sin_yaw = std::clamp(r(0, 2), -1.0, 1.0);
  out.yaw = std::asin(sin_yaw) / kDeg;
  if (std::abs(90.0 - std::abs(out.yaw)) <= lock_tol_deg) {
    // Roll pinned to zero: R(2,1) = sin a, R(1,1) = cos a.
    out.gimbal_locked = true;
    out.roll = 0.0;
    out.pitch = std::atan2(r(2, 1), r(1, 1)) / kDeg;
    return out;
  }
  out.pitch = std::atan2(-r(1, 2), r(2, 2)) / kDeg;
  out.roll = std::atan2(-r(0, 1), r(0, 0)) / kDeg;
  return out;
}

std::string format_pose(const PoseTransform& pose) {
  std::string out = fmt(pose.scale) + "\n";
  for (int i = 0; i < 3; ++i) {
    out += fmt(pose.rotation(i, 0)) + " " + fmt(pose.rotation(i, 1)) + " " +
           fmt(pose.rotation(i, 2)) + "\n";
  }
  out += fmt(pose.translation(0)) + " " + fmt(pose.translation(1)) + " " +
         fmt(pose.translation(2)) + "\n";
  return out;
}

PoseTransform parse_pose(const std::string& text) {
  std::istringstream in(text);
  PoseTransform pose;
  in >> pose.scale;
  for (int i = 0; i < 3; ++i) {
    in >> pose.rotation(i, 0) >> pose.rotation(i, 1) >> pose.rotation(i, 2);
  }
  in >> pose.translation(0) >> pose.translation(1) >> pose.translation(2);
  if (in.fail()) fail(ErrorCode::kParse, "malformed pose text");
  std::string rest;
  if (in >> rest) fail(ErrorCode::kParse, "trailing data after pose");
  return pose;
}

}  // namespace uvface
