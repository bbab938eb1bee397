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

#ifndef UVFACE_UV_MAP_H_
#define UVFACE_UV_MAP_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "uvface/grid.h"
#include "uvface/mesh.h"

namespace uvface {

struct UvCell {
  int row = 0;  // u, from height
  int col = 0;  // v, from azimuth
  friend bool operator==(const UvCell&, const UvCell&) = default;
};

// Where the value of one position-map cell comes from.
struct CellSource {
  enum class Kind : std::uint8_t { kEmpty, kVertex, kInterpolated };
  Kind kind = Kind::kEmpty;
  // kVertex: vertex[0] only. kInterpolated: the UV triangle's corners and
  // their barycentric weights.
  std::array<int, 3> vertex{-1, -1, -1};
  std::array<double, 3> weight{0.0, 0.0, 0.0};
};

// Cylindrical parameterisation of a template:
//   row = alpha_row * y + beta_row
//   col = alpha_col * atan(x / z) + beta_col
// fitted so the template spans rows [0, H-1] (top of the head at row 0) and
// columns [0, W-1]. Each vertex owns exactly one cell; every other cell
// inside a UV-space triangle is a barycentric blend of its corners.
struct UVMapping {
  int height = 0;
  int width = 0;
  double alpha_row = 0.0;
  double beta_row = 0.0;
  double alpha_col = 0.0;
  double beta_col = 0.0;
  Eigen::Matrix2Xd coords;       // continuous (row, col) per vertex
  std::vector<UvCell> cells;     // rounded cell per vertex
  std::vector<Facet> facets;     // triangles rasterised in UV space
  Grid<int> vertex_at;           // owning vertex per cell, -1 if none
  std::vector<CellSource> sources;  // row-major, height * width

  int num_vertices() const { return static_cast<int>(cells.size()); }
  const CellSource& source(int row, int col) const {
    return sources[vertex_at.index(row, col)];
  }
};

// Dense H x W grid of 3D positions; invalid cells hold zero and are ignored
// by every loss and metric.
struct UVPositionMap {
  Grid<Eigen::Vector3d> values;
  BinaryGrid valid;

  int height() const { return values.rows(); }
  int width() const { return values.cols(); }
};

// Per-cell loss weights from the four region ratios 16:12:3:0, scaled so
// that the mean over valid cells is one.
struct WeightMask {
  Grid<double> weights;
  Grid<std::uint8_t> region;  // Region value per cell, 0 where invalid
  double scale = 0.0;         // weight = ratio * scale
};

// Region ratio before normalisation.
double region_ratio(Region region);

// Fits the mapping on `templ` (all vertices need z > 0). Throws kDomain for
// z <= 0 and kResolutionTooCoarse naming the first colliding vertex pair.
UVMapping compute_uv_mapping(const FaceMesh& templ, int height, int width);

// Rasterises vertex positions into a position map. Registered cells copy the
// vertex exactly.
UVPositionMap encode_uv_map(const Eigen::Matrix3Xd& positions,
                            const UVMapping& mapping);

// Reads every vertex back from its registered cell (no interpolation).
Eigen::Matrix3Xd decode_uv_map(const UVPositionMap& map,
                               const UVMapping& mapping);

// Adjoint of encode: accumulates per-cell gradients onto the vertices that
// produced each cell. Invalid cells contribute nothing.
Eigen::Matrix3Xd pull_back_to_vertices(const Grid<Eigen::Vector3d>& cell_grad,
                                       const UVMapping& mapping);

// Builds the weight mask. `regions` labels every vertex; landmark vertices
// are forced to the landmark region. Interpolated cells take the smallest
// ratio among their triangle's corners.
WeightMask build_weight_mask(const UVMapping& mapping,
                             std::span<const Region> regions,
                             std::span<const int> landmarks = {});
WeightMask build_weight_mask(const UVMapping& mapping, const FaceMesh& mesh);

}  // namespace uvface

#endif  // UVFACE_UV_MAP_H_
