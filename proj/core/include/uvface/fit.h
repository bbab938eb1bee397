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

#ifndef UVFACE_FIT_H_
#define UVFACE_FIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uvface/grid.h"
#include "uvface/losses.h"
#include "uvface/mesh.h"
#include "uvface/pose.h"
#include "uvface/template.h"
#include "uvface/uv_map.h"
#include "uvface/visibility.h"

namespace uvface {

// Everything derived once from the template: UV mapping, weight mask and
// the UV-grid edge set.
struct FaceModel {
  FaceMesh mean;
  UVMapping mapping;
  WeightMask mask;
  std::vector<Edge> uv_edges;

  static FaceModel build(const TemplateSpec& spec = {}, int uv_rows = 256,
                         int uv_cols = 256);
  static FaceModel from_mesh(FaceMesh mean, int uv_rows, int uv_cols);
};

struct SynthConfig {
  std::uint64_t seed = 0;
  int count = 1;
  double yaw_min = -90.0, yaw_max = 90.0;
  double pitch_min = -30.0, pitch_max = 30.0;
  double roll_min = -30.0, roll_max = 30.0;
  // Multiplies the scale that fits the template into the image.
  double scale_min = 0.9, scale_max = 1.1;
  // Translation jitter as a fraction of the image size.
  double translation_jitter = 0.1;
  // Largest per-vertex displacement as a fraction of the template bounding
  // box diagonal.
  double deformation_magnitude = 0.05;
  // Number of cosine frequencies per UV axis.
  int basis_rank = 4;
  int image_size = 256;
  bool occlude = true;
  OcclusionSpec occlusion;  // seed is derived per sample
};

// Throws kInvalidArgument for inverted ranges or non-positive sizes.
void validate(const SynthConfig& cfg);

struct SynthSample {
  Eigen::Matrix3Xd deformation;
  PoseTransform pose;
  EulerAngles angles;
  FaceMesh shape;   // template + deformation
  FaceMesh posed;   // apply_pose(shape, pose), model frame (+y up)
  BinaryGrid face_mask;  // image frame
  BinaryGrid occluder;
  BinaryGrid attention;
  Eigen::VectorXd vertex_visibility;
  Eigen::VectorXd landmark_visibility;
};

// Smooth deformation from a cosine basis over the UV square, scaled so the
// largest vertex displacement is `magnitude` (in model units).
Eigen::Matrix3Xd smooth_deformation(const FaceModel& model, int rank,
                                    double magnitude, std::uint64_t seed);

// Deterministic in cfg.seed.
std::vector<SynthSample> synth_dataset(const FaceModel& model,
                                       const SynthConfig& cfg);

struct FitConfig {
  // Initial step, in model units per unit of normalised gradient.
  double step_size = 1.0;
  int max_iterations = 300;
  // Stop once one iteration lowers the total loss by less than this
  // fraction of its previous value.
  double tolerance = 1e-6;
  int max_halvings = 20;
  double eps = 0.1;
  LossConfig loss;
};

void validate(const FitConfig& cfg);

// What the fit is allowed to see.
struct FitTarget {
  Eigen::Matrix3Xd observed;  // pose-dependent face, model frame
  Eigen::VectorXd landmark_visibility;
};

struct TraceRow {
  int iteration = 0;
  double total = 0.0;
  // L_P, L_G, L_D, L_E, L_V
  std::array<double, 5> terms{};
};

struct FitResult {
  Eigen::Matrix3Xd deformation;
  PoseTransform pose;
  std::vector<TraceRow> trace;
  bool converged = false;
  bool monotone = true;
  int iterations = 0;
};

// Alternates weighted self-alignment against the observation with a
// backtracking gradient step on the deformation. Throws kDivergence when the
// loss exceeds 1e3 times its initial value.
FitResult fit_sample(const FaceModel& model, const FitTarget& target,
                     const FitConfig& cfg);

// `iter,total,L_P,L_G,L_D,L_E,L_V` lines with a header.
std::string format_trace(const std::vector<TraceRow>& trace);

struct GradientCheckConfig {
  std::uint64_t seed = 1;
  int points = 100;
};

struct TermCheck {
  std::string name;
  double max_relative_error = 0.0;
  int points = 0;
  int skipped = 0;
};

// Compares every analytic gradient used by the fit (L_G through pose and UV
// encoding, L_D, L_P, L_E, L_V) with central finite differences on small
// seeded random problems. Points near a kink are skipped and redrawn.
std::vector<TermCheck> check_gradients(const GradientCheckConfig& cfg = {});

std::string format_gradient_report(const std::vector<TermCheck>& report);

}  // namespace uvface

#endif  // UVFACE_FIT_H_
