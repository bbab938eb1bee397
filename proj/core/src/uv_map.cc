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

#include "uvface/uv_map.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "uvface/errors.h"

namespace uvface {
namespace {

// Affine map from [lo, hi] onto [0, n-1]; `flip` sends hi to 0.
void fit_axis(double lo, double hi, int n, bool flip, const char* axis,
              double* alpha, double* beta) {
  if (n == 1) {
    *alpha = 0.0;
    *beta = 0.0;
    return;
  }
  if (!(hi > lo)) {
    fail(ErrorCode::kDegenerate,
         std::string("template has no extent along the ") + axis + " axis");
  }
  if (flip) {
    *alpha = (n - 1) / (lo - hi);
    *beta = -*alpha * hi;
  } else {
    *alpha = (n - 1) / (hi - lo);
    *beta = -*alpha * lo;
  }
}

int to_cell(double x, int n) {
  const long r = std::lround(x);
  return static_cast<int>(std::clamp<long>(r, 0, n - 1));
}

void rasterise(UVMapping& m) {
  const int width = m.width;
  for (const Facet& t : m.facets) {
    const std::int64_t r0 = m.cells[t[0]].row, c0 = m.cells[t[0]].col;
    const std::int64_t r1 = m.cells[t[1]].row, c1 = m.cells[t[1]].col;
    const std::int64_t r2 = m.cells[t[2]].row, c2 = m.cells[t[2]].col;
    const std::int64_t area = (r1 - r0) * (c2 - c0) - (c1 - c0) * (r2 - r0);
    if (area == 0) continue;
    const std::int64_t rmin = std::min({r0, r1, r2});
    const std::int64_t rmax = std::max({r0, r1, r2});
    const std::int64_t cmin = std::min({c0, c1, c2});
    const std::int64_t cmax = std::max({c0, c1, c2});
    for (std::int64_t r = rmin; r <= rmax; ++r) {
      for (std::int64_t c = cmin; c <= cmax; ++c) {
        // Integer edge functions: exact inside test on lattice points.
        const std::int64_t w0 = (r1 - r) * (c2 - c) - (c1 - c) * (r2 - r);
        const std::int64_t w1 = (r2 - r) * (c0 - c) - (c2 - c) * (r0 - r);
        const std::int64_t w2 = (r0 - r) * (c1 - c) - (c0 - c) * (r1 - r);
        const bool inside = area > 0 ? (w0 >= 0 && w1 >= 0 && w2 >= 0)
                                     : (w0 <= 0 && w1 <= 0 && w2 <= 0);
        if (!inside) continue;
        CellSource& src = m.sources[static_cast<std::size_t>(r) * width +
                                    static_cast<std::size_t>(c)];
        if (src.kind != CellSource::Kind::kEmpty) continue;
        src.kind = CellSource::Kind::kInterpolated;
        src.vertex = t;
        const double inv = 1.0 / static_cast<double>(area);
        src.weight = {w0 * inv, w1 * inv, w2 * inv};
      }
    }
  }
}

void check_map_shape(const UVPositionMap& map, const UVMapping& mapping) {
  if (map.height() != mapping.height || map.width() != mapping.width ||
      !map.valid.same_shape(map.values)) {
    fail(ErrorCode::kDimensionMismatch,
         "position map is " + std::to_string(map.height()) + "x" +
             std::to_string(map.width()) + ", mapping expects " +
             std::to_string(mapping.height) + "x" +
             std::to_string(mapping.width));
  }
}

}  // namespace

double region_ratio(Region region) {
  switch (region) {
    case Region::kLandmark:
      return 16.0;
    case Region::kOrgan:
      return 12.0;
    case Region::kSkin:
      return 3.0;
    case Region::kNeck:
      return 0.0;
  }
  fail(ErrorCode::kInvalidArgument, "unknown region label");
}

UVMapping compute_uv_mapping(const FaceMesh& templ, int height, int width) {
  if (height < 1 || width < 1) {
    fail(ErrorCode::kInvalidArgument, "UV resolution must be positive");
  }
  const int n = templ.num_vertices();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "template has no vertices");

  UVMapping m;
  m.height = height;
  m.width = width;
  m.facets = templ.facets;

  Eigen::VectorXd azimuth(n);
  for (int i = 0; i < n; ++i) {
    const double z = templ.vertices(2, i);
    if (!(z > 0.0)) {
      fail(ErrorCode::kDomain, "vertex " + std::to_string(i) +
                                   " has z <= 0; the cylindrical map needs a "
                                   "frontal surface");
    }
    azimuth(i) = std::atan(templ.vertices(0, i) / z);
  }
  const Eigen::VectorXd y = templ.vertices.row(1).transpose();
  fit_axis(y.minCoeff(), y.maxCoeff(), height, /*flip=*/true, "y",
           &m.alpha_row, &m.beta_row);
  fit_axis(azimuth.minCoeff(), azimuth.maxCoeff(), width, /*flip=*/false,
           "azimuth", &m.alpha_col, &m.beta_col);

  m.coords.resize(2, n);
  m.cells.resize(static_cast<std::size_t>(n));
  m.vertex_at = Grid<int>(height, width, -1);
  m.sources.assign(static_cast<std::size_t>(height) * width, CellSource{});
  for (int i = 0; i < n; ++i) {
    const double u = m.alpha_row * y(i) + m.beta_row;
    const double v = m.alpha_col * azimuth(i) + m.beta_col;
    m.coords.col(i) << u, v;
    const UvCell cell{to_cell(u, height), to_cell(v, width)};
    m.cells[static_cast<std::size_t>(i)] = cell;
    int& owner = m.vertex_at(cell.row, cell.col);
    if (owner >= 0) {
      fail(ErrorCode::kResolutionTooCoarse,
           "vertices " + std::to_string(owner) + " and " + std::to_string(i) +
               " both map to cell (" + std::to_string(cell.row) + ", " +
               std::to_string(cell.col) + ") at " + std::to_string(height) +
               "x" + std::to_string(width));
    }
    owner = i;
    CellSource& src = m.sources[m.vertex_at.index(cell.row, cell.col)];
    src.kind = CellSource::Kind::kVertex;
    src.vertex = {i, -1, -1};
    src.weight = {1.0, 0.0, 0.0};
  }
  rasterise(m);
  return m;
}

UVPositionMap encode_uv_map(const Eigen::Matrix3Xd& positions,
                            const UVMapping& mapping) {
  if (positions.cols() != mapping.num_vertices()) {
    fail(ErrorCode::kDimensionMismatch,
         "got " + std::to_string(positions.cols()) +
             " positions for a mapping of " +
             std::to_string(mapping.num_vertices()) + " vertices");
  }
  UVPositionMap map;
  map.values = Grid<Eigen::Vector3d>(mapping.height, mapping.width,
                                     Eigen::Vector3d::Zero());
  map.valid = BinaryGrid(mapping.height, mapping.width, 0);
  for (std::size_t k = 0; k < mapping.sources.size(); ++k) {
    const CellSource& src = mapping.sources[k];
    switch (src.kind) {
      case CellSource::Kind::kEmpty:
        break;
      case CellSource::Kind::kVertex:
        map.values[k] = positions.col(src.vertex[0]);
        map.valid[k] = 1;
        break;
      case CellSource::Kind::kInterpolated:
        map.values[k] = src.weight[0] * positions.col(src.vertex[0]) +
                        src.weight[1] * positions.col(src.vertex[1]) +
                        src.weight[2] * positions.col(src.vertex[2]);
        map.valid[k] = 1;
        break;
    }
  }
  return map;
}

Eigen::Matrix3Xd decode_uv_map(const UVPositionMap& map,
                               const UVMapping& mapping) {
  check_map_shape(map, mapping);
  Eigen::Matrix3Xd out(3, mapping.num_vertices());
  for (int i = 0; i < mapping.num_vertices(); ++i) {
    const UvCell& cell = mapping.cells[static_cast<std::size_t>(i)];
    out.col(i) = map.values(cell.row, cell.col);
  }
  return out;
}

Eigen::Matrix3Xd pull_back_to_vertices(const Grid<Eigen::Vector3d>& cell_grad,
                                       const UVMapping& mapping) {
  if (cell_grad.rows() != mapping.height || cell_grad.cols() != mapping.width) {
    fail(ErrorCode::kDimensionMismatch,
         "gradient grid does not match the mapping resolution");
  }
  Eigen::Matrix3Xd out = Eigen::Matrix3Xd::Zero(3, mapping.num_vertices());
  for (std::size_t k = 0; k < mapping.sources.size(); ++k) {
    const CellSource& src = mapping.sources[k];
    if (src.kind == CellSource::Kind::kEmpty) continue;
    if (src.kind == CellSource::Kind::kVertex) {
      out.col(src.vertex[0]) += cell_grad[k];
      continue;
    }
    for (int j = 0; j < 3; ++j) {
      out.col(src.vertex[j]) += src.weight[j] * cell_grad[k];
    }
  }
  return out;
}

WeightMask build_weight_mask(const UVMapping& mapping,
                             std::span<const Region> regions,
                             std::span<const int> landmarks) {
  const int n = mapping.num_vertices();
  if (static_cast<int>(regions.size()) != n) {
    fail(ErrorCode::kInvalidArgument,
         "region labels cover " + std::to_string(regions.size()) + " of " +
             std::to_string(n) + " vertices");
  }
  std::vector<Region> label(regions.begin(), regions.end());
  for (std::size_t i = 0; i < label.size(); ++i) {
    const auto raw = static_cast<int>(label[i]);
    if (raw < 1 || raw > 4) {
      fail(ErrorCode::kInvalidArgument,
           "vertex " + std::to_string(i) + " has no region label");
    }
  }
  for (int idx : landmarks) {
    if (idx < 0 || idx >= n) {
      fail(ErrorCode::kInvalidArgument, "landmark index out of range");
    }
    label[static_cast<std::size_t>(idx)] = Region::kLandmark;
  }

  WeightMask mask;
  mask.weights = Grid<double>(mapping.height, mapping.width, 0.0);
  mask.region = Grid<std::uint8_t>(mapping.height, mapping.width, 0);
  double ratio_sum = 0.0;
  std::size_t valid = 0;
  for (std::size_t k = 0; k < mapping.sources.size(); ++k) {
    const CellSource& src = mapping.sources[k];
    if (src.kind == CellSource::Kind::kEmpty) continue;
    Region r = label[static_cast<std::size_t>(src.vertex[0])];
    if (src.kind == CellSource::Kind::kInterpolated) {
      for (int j = 1; j < 3; ++j) {
        const Region other = label[static_cast<std::size_t>(src.vertex[j])];
        if (region_ratio(other) < region_ratio(r)) r = other;
      }
    }
    mask.region[k] = static_cast<std::uint8_t>(r);
    mask.weights[k] = region_ratio(r);
    ratio_sum += mask.weights[k];
    ++valid;
  }
  if (!(ratio_sum > 0.0)) {
    fail(ErrorCode::kDegenerate,
         "weight mask is zero everywhere and cannot be normalised");
  }
  mask.scale = static_cast<double>(valid) / ratio_sum;
  for (double& w : mask.weights.data()) w *= mask.scale;
  return mask;
}

WeightMask build_weight_mask(const UVMapping& mapping, const FaceMesh& mesh) {
  return build_weight_mask(mapping, mesh.regions, mesh.landmarks);
}

}  // namespace uvface
