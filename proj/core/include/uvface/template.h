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

#ifndef UVFACE_TEMPLATE_H_
#define UVFACE_TEMPLATE_H_

#include "uvface/mesh.h"

namespace uvface {

inline constexpr int kNumLandmarks = 68;
// Outer eye corners in the 68-point convention.
inline constexpr int kLeftOuterEyeLandmark = 36;
inline constexpr int kRightOuterEyeLandmark = 45;

// Parameters of the procedural mean face: the front part of an ellipsoidal
// head sampled on a rows x cols lattice that is uniform in height and in
// azimuth, with a raised nose and shallow eye and mouth depressions.
struct TemplateSpec {
  int rows = 64;
  int cols = 64;
  double half_width = 80.0;   // x semi-axis
  double half_height = 110.0;  // y semi-axis
  double half_depth = 90.0;   // z semi-axis
  double max_azimuth_deg = 72.0;
  double vertical_extent = 0.9;  // fraction of the y semi-axis covered
};

// Builds the template mesh. The result is a pure function of `spec`; vertex
// coordinates are rounded to float precision so that they survive the
// float32 position-map file format unchanged. The landmarks follow the usual
// 68-point layout (jaw, brows, nose, eyes, mouth) snapped to lattice
// vertices; regions are labelled and facet edges recorded.
// Throws kInvalidArgument when the lattice cannot host 68 distinct landmarks.
FaceMesh build_mean_template(const TemplateSpec& spec = {});

}  // namespace uvface

#endif  // UVFACE_TEMPLATE_H_
