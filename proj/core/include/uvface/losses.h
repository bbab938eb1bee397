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

#ifndef UVFACE_LOSSES_H_
#define UVFACE_LOSSES_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uvface/grid.h"
#include "uvface/mesh.h"
#include "uvface/uv_map.h"
#include "uvface/visibility.h"

namespace uvface {

// Order of the six terms everywhere (reports, configs, traces).
enum class LossTerm { kGeometry = 0, kDeformation, kPoseDependent, kAttention, kEdge, kNormal };
inline constexpr int kNumLossTerms = 6;
const char* loss_term_name(LossTerm term);  // "L_G", "L_D", ...

struct LossConfig {
  double beta_geometry = 0.1;
  double beta_deformation = 0.5;
  double beta_pose_dependent = 1.0;
  double beta_attention = 0.05;
  double beta_edge = 1.0;
  double beta_normal = 0.1;
  double bce_delta = 1e-7;
  // Which adjacency the edge-length term runs over.
  EdgeSource edge_source = EdgeSource::kUvGrid;

  double beta(LossTerm term) const;
};

// Throws kInvalidArgument for negative weights or delta outside (0, 0.01].
void validate(const LossConfig& cfg);

struct MapLoss {
  double value = 0.0;
  Grid<Eigen::Vector3d> gradient;  // d value / d N
};

struct AttentionLoss {
  double value = 0.0;
  Grid<double> gradient;  // d value / d A
};

struct VertexLoss {
  double value = 0.0;
  Eigen::Matrix3Xd gradient;  // d value / d vertices
};

// sum over cells valid in both maps of M(u,v) * |N(u,v) - N_hat(u,v)|.
// The gradient at a tie (N = N_hat) is zero.
MapLoss weighted_position_loss(const UVPositionMap& n,
                               const UVPositionMap& n_hat,
                               const WeightMask& m);

// Mean binary cross-entropy with predictions clamped to [delta, 1 - delta].
// Cells outside the clamp window have zero gradient.
AttentionLoss bce_attention_loss(const AttentionMask& a, const BinaryGrid& a_hat,
                                 double delta = 1e-7);

// Pairs of vertices that are nearest registered neighbours along a UV row or
// column. On a mapping where every lattice point is registered this is
// plain 4-adjacency.
std::vector<Edge> build_uv_edge_set(const UVMapping& mapping);

// sum over edges of | |E_ij| - |E_hat_ij| | with E_ij = s_i - s_j.
VertexLoss edge_length_loss(const Eigen::Matrix3Xd& s,
                            const Eigen::Matrix3Xd& s_hat,
                            const std::vector<Edge>& edges);

// sum over facets of |<e_ij, n_hat>| + |<e_jk, n_hat>| + |<e_ki, n_hat>|
// where e are the predicted unit edge vectors and n_hat the given per-facet
// normals (taken from the ground-truth mesh). Throws kDegenerate for a
// zero-length predicted edge.
VertexLoss normal_vector_loss(const Eigen::Matrix3Xd& s,
                              const Eigen::Matrix3Xd& gt_normals,
                              const std::vector<Facet>& facets);

// One evaluated term; `gradient` is flattened and may be empty.
struct TermValue {
  double value = 0.0;
  std::vector<double> gradient;
};

using LossTerms = std::array<std::optional<TermValue>, kNumLossTerms>;

struct LossReport {
  std::array<double, kNumLossTerms> values{};
  std::array<bool, kNumLossTerms> present{};
  // Gradients already multiplied by their beta; empty when not supplied.
  std::array<std::vector<double>, kNumLossTerms> weighted_gradients;
  double total = 0.0;
};

// Weighted sum of the terms. A missing term is only accepted when its beta
// is zero.
LossReport total_loss(const LossTerms& terms, const LossConfig& cfg);

// `name value` per line followed by `total value`.
std::string format_loss_report(const LossReport& report);

}  // namespace uvface

#endif  // UVFACE_LOSSES_H_
