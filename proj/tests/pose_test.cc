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

#include <cmath>

#include "gtest/gtest.h"
#include "test_support.h"
#include "uvface/template.h"

namespace uvface {
namespace {

using ::uvface::testing::random_points;
using ::uvface::testing::random_rotation;
using ::uvface::testing::rot_x;
using ::uvface::testing::rot_y;
using ::uvface::testing::rot_z;

PoseTransform random_pose(CounterRng& rng, double fmin, double fmax) {
  PoseTransform p;
  p.scale = rng.uniform(fmin, fmax);
  p.rotation = random_rotation(rng);
  p.translation = random_points(rng, 1, -50.0, 50.0).col(0);
  return p;
}

TEST(ComposeShapeTest, ZeroDeformationIsTheTemplate) {
  const FaceMesh mean = build_mean_template();
  const FaceMesh s = compose_shape(mean, Eigen::Matrix3Xd::Zero(3, mean.num_vertices()));
  EXPECT_TRUE(s.vertices == mean.vertices);
}

TEST(ComposeShapeTest, NegatedTemplateCollapsesToOrigin) {
  const FaceMesh mean = build_mean_template();
  const FaceMesh s = compose_shape(mean, -mean.vertices);
  EXPECT_TRUE(s.vertices.isZero(0.0));
}

TEST(ComposeShapeTest, AddsVertexwise) {
  const FaceMesh mean = build_mean_template();
  CounterRng rng(3);
  Eigen::Matrix3Xd d = random_points(rng, mean.num_vertices(), -5.0, 5.0);
  const FaceMesh s = compose_shape(mean, d);
  for (int i = 0; i < mean.num_vertices(); ++i) {
    for (int a = 0; a < 3; ++a) {
      ASSERT_EQ(s.vertices(a, i), mean.vertices(a, i) + d(a, i));
    }
  }
  // With dyadic offsets the subtraction is exact as well.
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    d.data()[k] = std::round(d.data()[k] * 64.0) / 64.0;
  }
  EXPECT_TRUE(compose_shape(mean, d).vertices - mean.vertices == d);
}

TEST(ComposeShapeTest, RejectsWrongVertexCount) {
  const FaceMesh mean = build_mean_template();
  EXPECT_UVFACE_ERROR(compose_shape(mean, Eigen::Matrix3Xd::Zero(3, 3)),
                      ErrorCode::kDimensionMismatch);
}

TEST(ApplyPoseTest, IdentityLeavesShape) {
  const FaceMesh mean = build_mean_template();
  EXPECT_TRUE(apply_pose(mean, PoseTransform::identity()).vertices == mean.vertices);
}

TEST(ApplyPoseTest, ScaleAndTranslateArithmetic) {
  FaceMesh m;
  m.vertices = Eigen::Vector3d(1, 1, 1);
  PoseTransform p;
  p.scale = 2.0;
  p.translation = Eigen::Vector3d(1, 0, 0);
  EXPECT_EQ(apply_pose(m, p).vertices.col(0), Eigen::Vector3d(3, 2, 2));
}

TEST(ApplyPoseTest, InverseRestoresShape) {
  const FaceMesh mean = build_mean_template();
  CounterRng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const PoseTransform p = random_pose(rng, 0.1, 10.0);
    // Independent inverse: (1/f, R^T, -R^T t / f).
    PoseTransform inv;
    inv.scale = 1.0 / p.scale;
    inv.rotation = p.rotation.transpose();
    inv.translation = -p.rotation.transpose() * p.translation / p.scale;
    const FaceMesh back = apply_pose(apply_pose(mean, p), inv);
    EXPECT_LT((back.vertices - mean.vertices).cwiseAbs().maxCoeff(), 1e-9);
    const PoseTransform lib = p.inverse();
    EXPECT_NEAR(lib.scale, inv.scale, 1e-15);
    EXPECT_LT((lib.rotation - inv.rotation).norm(), 1e-15);
    EXPECT_LT((lib.translation - inv.translation).norm(), 1e-12);
  }
}

TEST(ApplyPoseTest, RejectsNonRotationAndBadScale) {
  FaceMesh m;
  m.vertices = Eigen::Vector3d(1, 1, 1);
  PoseTransform p;
  p.rotation(0, 0) = 1.001;
  EXPECT_UVFACE_ERROR(apply_pose(m, p), ErrorCode::kInvalidArgument);
  PoseTransform mirror;
  mirror.rotation = Eigen::Vector3d(1, 1, -1).asDiagonal();
  EXPECT_UVFACE_ERROR(apply_pose(m, mirror), ErrorCode::kInvalidArgument);
  PoseTransform zero;
  zero.scale = 0.0;
  EXPECT_UVFACE_ERROR(apply_pose(m, zero), ErrorCode::kInvalidArgument);
}

TEST(ProjectTest, DropsDepth) {
  const Eigen::Matrix2Xd p = project(Eigen::Matrix3Xd(Eigen::Vector3d(1, 2, 3)));
  EXPECT_EQ(p.col(0), Eigen::Vector2d(1, 2));
  EXPECT_TRUE(project(Eigen::Matrix3Xd::Zero(3, 5)).isZero(0.0));
}

TEST(ProjectTest, CommutesWithInPlaneTranslation) {
  CounterRng rng(4);
  const Eigen::Matrix3Xd v = random_points(rng, 100, -10, 10);
  Eigen::Matrix3Xd moved = v;
  moved.row(0).array() += 2.5;
  moved.row(1).array() -= 1.25;
  Eigen::Matrix2Xd expected = project(v);
  expected.row(0).array() += 2.5;
  expected.row(1).array() -= 1.25;
  EXPECT_TRUE(project(moved) == expected);
}

TEST(EulerTest, ZeroAnglesGiveIdentity) {
  EXPECT_TRUE(euler_to_rotation({}).isApprox(Eigen::Matrix3d::Identity(), 0.0));
}

TEST(EulerTest, NinetyYawColumns) {
  EulerAngles a;
  a.yaw = 90.0;
  const Eigen::Matrix3d r = euler_to_rotation(a);
  EXPECT_NEAR((r.col(0) - Eigen::Vector3d(0, 0, -1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((r.col(1) - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((r.col(2) - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(EulerTest, MatchesElementaryProduct) {
  CounterRng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    EulerAngles a;
    a.yaw = rng.uniform(-180, 180);
    a.pitch = rng.uniform(-180, 180);
    a.roll = rng.uniform(-180, 180);
    const Eigen::Matrix3d expected = rot_x(a.pitch) * rot_y(a.yaw) * rot_z(a.roll);
    EXPECT_LT((euler_to_rotation(a) - expected).norm(), 1e-14);
  }
}

TEST(EulerTest, KnownTripleRoundTrips) {
  EulerAngles a;
  a.yaw = 30;
  a.pitch = 10;
  a.roll = -5;
  const EulerAngles b = rotation_to_euler(euler_to_rotation(a));
  EXPECT_NEAR(b.yaw, 30, 1e-9);
  EXPECT_NEAR(b.pitch, 10, 1e-9);
  EXPECT_NEAR(b.roll, -5, 1e-9);
  EXPECT_FALSE(b.gimbal_locked);
}

TEST(EulerTest, RandomAnglesAwayFromLockRoundTrip) {
  CounterRng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    EulerAngles a;
    a.yaw = rng.uniform(-89, 89);
    a.pitch = rng.uniform(-179, 179);
    a.roll = rng.uniform(-179, 179);
    const EulerAngles b = rotation_to_euler(euler_to_rotation(a));
    ASSERT_NEAR(b.yaw, a.yaw, 1e-9);
    ASSERT_NEAR(b.pitch, a.pitch, 1e-9);
    ASSERT_NEAR(b.roll, a.roll, 1e-9);
  }
}

TEST(EulerTest, IdentityIsNotLocked) {
  const EulerAngles e = rotation_to_euler(Eigen::Matrix3d::Identity());
  EXPECT_EQ(e.yaw, 0.0);
  EXPECT_EQ(e.pitch, 0.0);
  EXPECT_EQ(e.roll, 0.0);
  EXPECT_FALSE(e.gimbal_locked);
}

TEST(EulerTest, NearNinetyYawIsFlaggedLocked) {
  EulerAngles a;
  a.yaw = 89.99;
  a.pitch = 40;
  a.roll = 10;
  const EulerAngles e = rotation_to_euler(euler_to_rotation(a), 0.5);
  EXPECT_TRUE(e.gimbal_locked);
  EXPECT_EQ(e.roll, 0.0);
  EXPECT_NEAR(e.yaw, 89.99, 1e-6);
}

TEST(EulerTest, LockedDecompositionReproducesTheRotation) {
  for (double yaw : {90.0, -90.0}) {
    EulerAngles a;
    a.yaw = yaw;
    a.pitch = 25;
    a.roll = -40;
    const Eigen::Matrix3d r = euler_to_rotation(a);
    const EulerAngles e = rotation_to_euler(r);
    EXPECT_TRUE(e.gimbal_locked);
    EXPECT_LT((euler_to_rotation(e) - r).norm(), 1e-7) << yaw;
  }
}

TEST(EulerTest, RejectsNonRotation) {
  EXPECT_UVFACE_ERROR(rotation_to_euler(2.0 * Eigen::Matrix3d::Identity()),
                      ErrorCode::kInvalidArgument);
}

TEST(PoseTextTest, RoundTripIsExact) {
  CounterRng rng(12);
  const PoseTransform p = random_pose(rng, 0.2, 5.0);
  const PoseTransform q = parse_pose(format_pose(p));
  EXPECT_EQ(q.scale, p.scale);
  EXPECT_TRUE(q.rotation == p.rotation);
  EXPECT_TRUE(q.translation == p.translation);
}

TEST(PoseTextTest, RejectsMalformedText) {
  EXPECT_UVFACE_ERROR(parse_pose("1\n1 0 0\n0 1 0\n"), ErrorCode::kParse);
  EXPECT_UVFACE_ERROR(parse_pose(format_pose({}) + "7\n"), ErrorCode::kParse);
}

}  // namespace
}  // namespace uvface
