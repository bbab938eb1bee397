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

#ifndef UVFACE_SELF_ALIGN_H_
#define UVFACE_SELF_ALIGN_H_

#include <utility>

#include <Eigen/Core>

#include "uvface/mesh.h"
#include "uvface/pose.h"

namespace uvface {

inline constexpr double kDefaultVisibilityEps = 0.1;
// sigma_2 / sigma_1 of the weighted cross-covariance below which the
// rotation is not observable.
inline constexpr double kIllConditionedRatio = 1e-12;

// Corresponding landmark sets: `source` from the pose-independent face,
// `target` from the pose-dependent face, one diagonal weight per pair.
struct LandmarkCorrespondence {
  Eigen::Matrix3Xd source;
  Eigen::Matrix3Xd target;
  Eigen::VectorXd weights;
};

enum class ScaleEstimator {
  // Ratio of unweighted sums of distances to the weighted centroids.
  kUnweightedSums,
  // Same ratio with each distance multiplied by its weight.
  kWeightedSums,
};

struct SimilarityOptions {
  ScaleEstimator scale = ScaleEstimator::kUnweightedSums;
};

// W(i,i) = vis(i) + eps. Throws kInvalidArgument for eps <= 0.
Eigen::VectorXd landmark_weights(const Eigen::VectorXd& vis,
                                 double eps = kDefaultVisibilityEps);

// Weighted centroids (source, target). Throws kDegenerate if the weights
// sum to zero and kDimensionMismatch for unequal lengths.
std::pair<Eigen::Vector3d, Eigen::Vector3d> weighted_centroids(
    const LandmarkCorrespondence& c);

// Scale from centroid distances. Throws kDegenerate when all source points
// coincide with their centroid.
double estimate_scale(const LandmarkCorrespondence& c,
                      const std::pair<Eigen::Vector3d, Eigen::Vector3d>& centroids,
                      ScaleEstimator estimator = ScaleEstimator::kUnweightedSums);

// Weighted similarity fit target ~ f R source + t via SVD of the weighted
// cross-covariance of the centred sets. Reflections are corrected so R is
// always proper. Throws kDegenerate for fewer than three points, collinear
// or coincident configurations.
PoseTransform estimate_similarity(const LandmarkCorrespondence& c,
                                  const SimilarityOptions& options = {});

// Pose of `p_face` relative to `s_face` from their shared landmark indices.
// `vis` holds one value per vertex of the meshes.
PoseTransform self_align(const FaceMesh& p_face, const FaceMesh& s_face,
                         const Eigen::VectorXd& vis,
                         double eps = kDefaultVisibilityEps,
                         const SimilarityOptions& options = {});

// Same, with visibility given per landmark.
PoseTransform self_align_landmarks(const FaceMesh& p_face,
                                   const FaceMesh& s_face,
                                   const Eigen::VectorXd& landmark_vis,
                                   double eps = kDefaultVisibilityEps,
                                   const SimilarityOptions& options = {});

// Final geometry G = f R S + t.
FaceMesh reconstruct_final(const FaceMesh& s_face, const PoseTransform& pose);

}  // namespace uvface

#endif  // UVFACE_SELF_ALIGN_H_
