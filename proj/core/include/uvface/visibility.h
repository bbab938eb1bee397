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

#ifndef UVFACE_VISIBILITY_H_
#define UVFACE_VISIBILITY_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "uvface/grid.h"
#include "uvface/mesh.h"

namespace uvface {

// Soft attention in [0, 1], indexed (row, col) = (floor(y), floor(x)).
using AttentionMask = Grid<double>;

// H x W x C feature map, channels innermost.
struct FeatureMap {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int r, int c, int ch, double fill = 0.0)
      : rows(r), cols(c), channels(ch),
        data(static_cast<std::size_t>(r) * c * ch, fill) {}

  double& at(int r, int c, int ch) {
    return data[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
  }
  double at(int r, int c, int ch) const {
    return data[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
  }
};

// F * exp(A), broadcast over channels. Throws kDimensionMismatch.
FeatureMap attend_features(const FeatureMap& features, const AttentionMask& a);

// Maps a posed mesh (model frame, +y up) into the image frame used by the
// attention mask: x stays, y becomes image_height - y, and facet winding is
// reversed so outward normals still point towards +z (the viewer).
FaceMesh to_image_frame(const FaceMesh& posed, int image_height);

// Per-vertex visibility: 0 when the vertex normal has n_z < 0 or the vertex
// falls outside the mask, else A(floor(y), floor(x)). The mesh must already
// be in the image frame of `a`.
Eigen::VectorXd estimate_visibility(const FaceMesh& posed,
                                    const AttentionMask& a);

// Rasterises projected triangles (x = column, y = row, pixel centres at
// +0.5) with the top-left fill rule. Either winding is accepted.
BinaryGrid render_face_binary_mask(const Eigen::Matrix2Xd& projected,
                                   const std::vector<Facet>& facets,
                                   int rows, int cols);

enum class OccluderFamily : std::uint8_t {
  kEllipse = 1 << 0,
  kRectangle = 1 << 1,
  kPolygon = 1 << 2,
};

struct OcclusionSpec {
  std::uint64_t seed = 0;
  int min_count = 1;
  int max_count = 3;
  std::uint8_t families = 0x7;  // OccluderFamily bit set
  // Half-extent range as a fraction of min(rows, cols).
  double min_size = 0.05;
  double max_size = 0.25;
};

// One sampled occluder. Polygon vertices are stored in image coordinates;
// for ellipses and rectangles `half_extent` and `angle` define the shape.
struct OccluderShape {
  OccluderFamily family = OccluderFamily::kEllipse;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  // (x, y)
  Eigen::Vector2d half_extent = Eigen::Vector2d::Zero();
  double angle = 0.0;  // radians
  std::vector<Eigen::Vector2d> polygon;

  bool contains(const Eigen::Vector2d& p) const;
};

struct OcclusionResult {
  BinaryGrid occluder;       // 1 = occluded
  BinaryGrid gt_attention;   // face AND NOT occluder
  std::vector<OccluderShape> shapes;
};

// Throws kInvalidArgument for an empty family set, inverted ranges or
// non-positive sizes.
void validate(const OcclusionSpec& spec);

// Samples occluders deterministically from spec.seed and derives the
// ground-truth attention mask for `face_mask`.
OcclusionResult synthesize_occlusion(const BinaryGrid& face_mask,
                                     const OcclusionSpec& spec);

}  // namespace uvface

#endif  // UVFACE_VISIBILITY_H_
