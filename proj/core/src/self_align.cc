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

#include "uvface/self_align.h"

#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "uvface/errors.h"

namespace uvface {
namespace {

void check_shapes(const LandmarkCorrespondence& c) {
  if (c.source.cols() != c.target.cols() ||
      c.source.cols() != c.weights.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "correspondence sizes differ: " + std::to_string(c.source.cols()) +
             " source, " + std::to_string(c.target.cols()) + " target, " +
             std::to_string(c.weights.size()) + " weights");
  }
}

}  // namespace

Eigen::VectorXd landmark_weights(const Eigen::VectorXd& vis, double eps) {
  if (!(eps > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "visibility eps must be positive");
  }
  return (vis.array() + eps).matrix();
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> weighted_centroids(
    const LandmarkCorrespondence& c) {
  check_shapes(c);
  const double total = c.weights.sum();
  if (!(total > 0.0)) {
    fail(ErrorCode::kDegenerate, "landmark weights sum to zero");
  }
  return {(c.source * c.weights) / total, (c.target * c.weights) / total};
}

double estimate_scale(
    const LandmarkCorrespondence& c,
    const std::pair<Eigen::Vector3d, Eigen::Vector3d>& centroids,
    ScaleEstimator estimator) {
  check_shapes(c);
  const Eigen::VectorXd ds =
      (c.source.colwise() - centroids.first).colwise().norm().transpose();
  const Eigen::VectorXd dp =
      (c.target.colwise() - centroids.second).colwise().norm().transpose();
  double num = 0.0;
  double den = 0.0;
  if (estimator == ScaleEstimator::kWeightedSums) {
    num = c.weights.dot(dp);
    den = c.weights.dot(ds);
  } else {
    num = dp.sum();
    den = ds.sum();
  }
  if (!(den > 0.0)) {
    fail(ErrorCode::kDegenerate,
         "source landmarks coincide with their centroid; scale undefined");
  }
  return num / den;
}

PoseTransform estimate_similarity(const LandmarkCorrespondence& c,
                                  const SimilarityOptions& options) {
  check_shapes(c);
  if (c.source.cols() < 3) {
    fail(ErrorCode::kDegenerate, "similarity fit needs at least 3 landmarks");
  }
  const auto centroids = weighted_centroids(c);
  const double f = estimate_scale(c, centroids, options.scale);
  if (!(f > 0.0)) {
    fail(ErrorCode::kDegenerate, "target landmarks collapse to a point");
  }

  const Eigen::Matrix3Xd src = f * (c.source.colwise() - centroids.first);
  const Eigen::Matrix3Xd dst = c.target.colwise() - centroids.second;
  // H = K_S' W K_P'^T = U S V^T; the fitted rotation is V U^T.
  const Eigen::Matrix3d h = src * c.weights.asDiagonal() * dst.transpose();
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sigma = svd.singularValues();
  if (!(sigma(0) > 0.0) || sigma(1) < kIllConditionedRatio * sigma(0)) {
    fail(ErrorCode::kDegenerate,
         "landmarks are collinear or coincident; rotation is unobservable");
  }
  Eigen::Matrix3d v = svd.matrixV();
  const Eigen::Matrix3d& u = svd.matrixU();
  if ((v * u.transpose()).determinant() < 0.0) v.col(2) = -v.col(2);

  PoseTransform pose;
  pose.scale = f;
  pose.rotation = v * u.transpose();
  pose.translation = centroids.second - f * pose.rotation * centroids.first;
  return pose;
}

PoseTransform self_align_landmarks(const FaceMesh& p_face,
                                   const FaceMesh& s_face,
                                   const Eigen::VectorXd& landmark_vis,
                                   double eps,
                                   const SimilarityOptions& options) {
  if (p_face.num_vertices() != s_face.num_vertices() ||
      p_face.landmarks != s_face.landmarks) {
    fail(ErrorCode::kDimensionMismatch,
         "faces must share vertex count and landmark indices");
  }
  if (landmark_vis.size() != static_cast<Eigen::Index>(s_face.landmarks.size())) {
    fail(ErrorCode::kDimensionMismatch,
         "expected " + std::to_string(s_face.landmarks.size()) +
             " landmark visibilities, got " +
             std::to_string(landmark_vis.size()));
  }
  LandmarkCorrespondence c;
  c.source = s_face.landmark_positions();
  c.target = p_face.landmark_positions();
  c.weights = landmark_weights(landmark_vis, eps);
  return estimate_similarity(c, options);
}

PoseTransform self_align(const FaceMesh& p_face, const FaceMesh& s_face,
                         const Eigen::VectorXd& vis, double eps,
                         const SimilarityOptions& options) {
  if (vis.size() != s_face.num_vertices()) {
    fail(ErrorCode::kDimensionMismatch,
         "visibility has " + std::to_string(vis.size()) + " entries for " +
             std::to_string(s_face.num_vertices()) + " vertices");
  }
  Eigen::VectorXd lm(static_cast<Eigen::Index>(s_face.landmarks.size()));
  for (std::size_t i = 0; i < s_face.landmarks.size(); ++i) {
    lm(static_cast<Eigen::Index>(i)) = vis(s_face.landmarks[i]);
  }
  return self_align_landmarks(p_face, s_face, lm, eps, options);
}

FaceMesh reconstruct_final(const FaceMesh& s_face, const PoseTransform& pose) {
  return apply_pose(s_face, pose);
}

}  // namespace uvface
