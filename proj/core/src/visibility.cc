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

#include "uvface/visibility.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "uvface/errors.h"
#include "uvface/rng.h"

namespace uvface {
namespace {

double edge_fn(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
               const Eigen::Vector2d& p) {
  return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
}

// With y pointing down and positive edge_fn orientation, top edges are
// horizontal going right and left edges go up.
bool is_top_left(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double dy = b.y() - a.y();
  const double dx = b.x() - a.x();
  return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

bool covers(double w, bool top_left) { return w > 0.0 || (w == 0.0 && top_left); }

Eigen::Vector2d rotate(const Eigen::Vector2d& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

std::vector<OccluderFamily> enabled_families(std::uint8_t bits) {
  std::vector<OccluderFamily> out;
  for (OccluderFamily f : {OccluderFamily::kEllipse, OccluderFamily::kRectangle,
                           OccluderFamily::kPolygon}) {
    if (bits & static_cast<std::uint8_t>(f)) out.push_back(f);
  }
  return out;
}

}  // namespace

FeatureMap attend_features(const FeatureMap& features, const AttentionMask& a) {
  if (features.rows != a.rows() || features.cols != a.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         "feature map is " + std::to_string(features.rows) + "x" +
             std::to_string(features.cols) + ", attention mask is " +
             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  FeatureMap out = features;
  for (int r = 0; r < features.rows; ++r) {
    for (int c = 0; c < features.cols; ++c) {
      const double gain = std::exp(a(r, c));
      for (int ch = 0; ch < features.channels; ++ch) out.at(r, c, ch) *= gain;
    }
  }
  return out;
}

FaceMesh to_image_frame(const FaceMesh& posed, int image_height) {
  FaceMesh out = posed;
  out.vertices.row(1) =
      (static_cast<double>(image_height) - posed.vertices.row(1).array())
          .matrix();
  for (Facet& f : out.facets) std::swap(f[1], f[2]);
  return out;
}

Eigen::VectorXd estimate_visibility(const FaceMesh& posed,
                                    const AttentionMask& a) {
  const Eigen::Matrix3Xd normals = vertex_normals(posed.vertices, posed.facets);
  Eigen::VectorXd vis = Eigen::VectorXd::Zero(posed.num_vertices());
  for (int i = 0; i < posed.num_vertices(); ++i) {
    if (normals(2, i) < 0.0) continue;
    const double fx = std::floor(posed.vertices(0, i));
    const double fy = std::floor(posed.vertices(1, i));
    if (!(fx >= 0.0 && fy >= 0.0 && fx < a.cols() && fy < a.rows())) continue;
    vis(i) = a(static_cast<int>(fy), static_cast<int>(fx));
  }
  return vis;
}

BinaryGrid render_face_binary_mask(const Eigen::Matrix2Xd& projected,
                                   const std::vector<Facet>& facets, int rows,
                                   int cols) {
  if (rows <= 0 || cols <= 0) {
    fail(ErrorCode::kInvalidArgument, "mask dimensions must be positive");
  }
  BinaryGrid mask(rows, cols, 0);
  for (const Facet& f : facets) {
    Eigen::Vector2d v0 = projected.col(f[0]);
    Eigen::Vector2d v1 = projected.col(f[1]);
    Eigen::Vector2d v2 = projected.col(f[2]);
    double area = edge_fn(v0, v1, v2);
    if (area == 0.0 || !std::isfinite(area)) continue;
    if (area < 0.0) std::swap(v1, v2);
    const bool tl0 = is_top_left(v1, v2);
    const bool tl1 = is_top_left(v2, v0);
    const bool tl2 = is_top_left(v0, v1);
    const double xmin = std::min({v0.x(), v1.x(), v2.x()});
    const double xmax = std::max({v0.x(), v1.x(), v2.x()});
    const double ymin = std::min({v0.y(), v1.y(), v2.y()});
    const double ymax = std::max({v0.y(), v1.y(), v2.y()});
    const int c0 = std::max(0, static_cast<int>(std::floor(xmin - 0.5)));
    const int c1 = std::min(cols - 1, static_cast<int>(std::ceil(xmax - 0.5)));
    const int r0 = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
    const int r1 = std::min(rows - 1, static_cast<int>(std::ceil(ymax - 0.5)));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (mask(r, c)) continue;
        const Eigen::Vector2d p(c + 0.5, r + 0.5);
        if (covers(edge_fn(v1, v2, p), tl0) &&
            covers(edge_fn(v2, v0, p), tl1) &&
            covers(edge_fn(v0, v1, p), tl2)) {
          mask(r, c) = 1;
        }
      }
    }
  }
  return mask;
}

bool OccluderShape::contains(const Eigen::Vector2d& p) const {
  switch (family) {
    case OccluderFamily::kEllipse: {
      const Eigen::Vector2d q = rotate(p - center, -angle);
      const double a = q.x() / half_extent.x();
      const double b = q.y() / half_extent.y();
      return a * a + b * b <= 1.0;
    }
    case OccluderFamily::kRectangle: {
      const Eigen::Vector2d q = rotate(p - center, -angle);
      return std::abs(q.x()) <= half_extent.x() &&
             std::abs(q.y()) <= half_extent.y();
    }
    case OccluderFamily::kPolygon: {
      bool any_pos = false;
      bool any_neg = false;
      const std::size_t k = polygon.size();
      for (std::size_t i = 0; i < k; ++i) {
        const double w = edge_fn(polygon[i], polygon[(i + 1) % k], p);
        any_pos |= w > 0.0;
        any_neg |= w < 0.0;
      }
      return !(any_pos && any_neg);
    }
  }
  return false;
}

void validate(const OcclusionSpec& spec) {
  if ((spec.families & 0x7) == 0) {
    fail(ErrorCode::kInvalidArgument, "no occluder family enabled");
  }
  if (spec.min_count < 0 || spec.max_count < spec.min_count) {
    fail(ErrorCode::kInvalidArgument, "invalid occluder count range");
  }
  if (!(spec.min_size > 0.0) || !(spec.max_size >= spec.min_size) ||
      !std::isfinite(spec.max_size)) {
    fail(ErrorCode::kInvalidArgument,
         "occluder sizes must satisfy 0 < min_size <= max_size");
  }
}

OcclusionResult synthesize_occlusion(const BinaryGrid& face_mask,
                                     const OcclusionSpec& spec) {
  validate(spec);
  const int rows = face_mask.rows();
  const int cols = face_mask.cols();
  const double base = std::min(rows, cols);
  const std::vector<OccluderFamily> families = enabled_families(spec.families);

  CounterRng rng(spec.seed, /*stream=*/0x0cc1);
  OcclusionResult out;
  const auto count = rng.uniform_int(spec.min_count, spec.max_count);
  for (std::int64_t k = 0; k < count; ++k) {
    OccluderShape shape;
    shape.family = families[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(families.size()) - 1))];
    shape.center = {rng.uniform(0.0, cols), rng.uniform(0.0, rows)};
    shape.half_extent = {base * rng.uniform(spec.min_size, spec.max_size),
                         base * rng.uniform(spec.min_size, spec.max_size)};
    shape.angle = rng.uniform(0.0, std::numbers::pi);
    if (shape.family == OccluderFamily::kPolygon) {
      // Points on an ellipse taken in angular order form a convex polygon.
      const auto sides = rng.uniform_int(3, 8);
      const double step = 2.0 * std::numbers::pi / static_cast<double>(sides);
      for (std::int64_t j = 0; j < sides; ++j) {
        const double phi = step * (static_cast<double>(j) +
                                   rng.uniform(-0.3, 0.3));
        const Eigen::Vector2d local(shape.half_extent.x() * std::cos(phi),
                                    shape.half_extent.y() * std::sin(phi));
        shape.polygon.push_back(shape.center + rotate(local, shape.angle));
      }
    }
    out.shapes.push_back(std::move(shape));
  }

  out.occluder = BinaryGrid(rows, cols, 0);
  out.gt_attention = BinaryGrid(rows, cols, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Eigen::Vector2d p(c + 0.5, r + 0.5);
      bool hit = false;
      for (const OccluderShape& s : out.shapes) {
        if (s.contains(p)) {
          hit = true;
          break;
        }
      }
      out.occluder(r, c) = hit ? 1 : 0;
      out.gt_attention(r, c) = (face_mask(r, c) && !hit) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace uvface
