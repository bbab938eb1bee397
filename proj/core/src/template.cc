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

#include "uvface/template.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "uvface/errors.h"

namespace uvface {
namespace {

struct Point2 {
  double s;  // horizontal, -1 (subject's right, -x) .. +1
  double t;  // vertical, -1 (bottom) .. +1 (top)
};

// 68-point layout in normalised face coordinates.
std::array<Point2, kNumLandmarks> landmark_layout() {
  std::array<Point2, kNumLandmarks> p{};
  // Jaw line 0..16: arc from the left temple down to the chin and back up.
  for (int k = 0; k <= 16; ++k) {
    const double a = std::numbers::pi * k / 16.0;
    p[k] = {-0.8 * std::cos(a), 0.3 - 1.05 * std::sin(a)};
  }
  // Brows 17..26.
  for (int k = 0; k < 5; ++k) {
    const double s = -0.65 + 0.125 * k;
    const double arch = 0.05 * std::sin(std::numbers::pi * k / 4.0);
    p[17 + k] = {s, 0.47 + arch};
    p[26 - k] = {-s, 0.47 + arch};
  }
  // Nose bridge 27..30 and base 31..35.
  for (int k = 0; k < 4; ++k) p[27 + k] = {0.0, 0.35 - 0.1 * k};
  for (int k = 0; k < 5; ++k) {
    p[31 + k] = {-0.15 + 0.075 * k, k == 2 ? -0.08 : -0.05};
  }
  // Eyes 36..47, outer corner first, clockwise on screen.
  const std::array<Point2, 6> eye = {{{-0.55, 0.30},
                                      {-0.45, 0.36},
                                      {-0.33, 0.36},
                                      {-0.25, 0.30},
                                      {-0.33, 0.24},
                                      {-0.45, 0.24}}};
  for (int k = 0; k < 6; ++k) p[36 + k] = eye[k];
  // Right eye mirrors the left one, starting at its inner corner.
  const std::array<int, 6> mirror = {3, 2, 1, 0, 5, 4};
  for (int k = 0; k < 6; ++k) {
    p[42 + k] = {-eye[mirror[k]].s, eye[mirror[k]].t};
  }
  // Outer lip 48..59, inner lip 60..67.
  const std::array<Point2, 12> outer = {{{-0.30, -0.35},
                                         {-0.20, -0.28},
                                         {-0.08, -0.25},
                                         {0.00, -0.26},
                                         {0.08, -0.25},
                                         {0.20, -0.28},
                                         {0.30, -0.35},
                                         {0.20, -0.43},
                                         {0.08, -0.46},
                                         {0.00, -0.47},
                                         {-0.08, -0.46},
                                         {-0.20, -0.43}}};
  for (int k = 0; k < 12; ++k) p[48 + k] = outer[k];
  const std::array<Point2, 8> inner = {{{-0.22, -0.35},
                                        {-0.08, -0.31},
                                        {0.00, -0.31},
                                        {0.08, -0.31},
                                        {0.22, -0.35},
                                        {0.08, -0.39},
                                        {0.00, -0.39},
                                        {-0.08, -0.39}}};
  for (int k = 0; k < 8; ++k) p[60 + k] = inner[k];
  return p;
}

double gauss(double s, double t, double cs, double ct, double ss, double st) {
  const double ds = (s - cs) / ss;
  const double dt = (t - ct) / st;
  return std::exp(-0.5 * (ds * ds + dt * dt));
}

// Radial relief in the horizontal plane. Because it only scales (x, z), the
// azimuth and height of every lattice vertex are unchanged, which keeps the
// cylindrical UV layout a perfect lattice.
double relief(double s, double t) {
  double r = 1.0;
  r += 0.20 * gauss(s, t, 0.0, 0.12, 0.08, 0.17);
  r -= 0.05 * gauss(s, t, -0.4, 0.3, 0.12, 0.07);
  r -= 0.05 * gauss(s, t, 0.4, 0.3, 0.12, 0.07);
  r -= 0.03 * gauss(s, t, 0.0, -0.36, 0.18, 0.05);
  return r;
}

bool in_ellipse(double s, double t, double cs, double ct, double rs,
                double rt) {
  const double ds = (s - cs) / rs;
  const double dt = (t - ct) / rt;
  return ds * ds + dt * dt <= 1.0;
}

Region classify(double s, double t) {
  if (t < -0.8) return Region::kNeck;
  if (in_ellipse(s, t, -0.4, 0.3, 0.2, 0.1) ||
      in_ellipse(s, t, 0.4, 0.3, 0.2, 0.1) ||
      in_ellipse(s, t, 0.0, -0.36, 0.34, 0.16) ||
      (std::abs(s) < 0.15 && t > -0.12 && t < 0.4)) {
    return Region::kOrgan;
  }
  return Region::kSkin;
}

}  // namespace

FaceMesh build_mean_template(const TemplateSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) {
    fail(ErrorCode::kInvalidArgument, "template lattice needs at least 2x2");
  }
  if (static_cast<long>(spec.rows) * spec.cols < kNumLandmarks) {
    fail(ErrorCode::kInvalidArgument,
         "a " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) +
             " lattice cannot host " + std::to_string(kNumLandmarks) +
             " landmarks");
  }
  if (!(spec.max_azimuth_deg > 0.0 && spec.max_azimuth_deg < 90.0) ||
      !(spec.vertical_extent > 0.0 && spec.vertical_extent < 1.0) ||
      !(spec.half_width > 0.0 && spec.half_height > 0.0 &&
        spec.half_depth > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "template shape parameters out of range");
  }

  const int rows = spec.rows;
  const int cols = spec.cols;
  const double max_azimuth = spec.max_azimuth_deg * std::numbers::pi / 180.0;
  auto s_of = [&](int c) { return -1.0 + 2.0 * c / (cols - 1); };
  auto t_of = [&](int r) { return 1.0 - 2.0 * r / (rows - 1); };
  auto vid = [&](int r, int c) { return r * cols + c; };

  FaceMesh mesh;
  // Built in single precision so every coordinate is exactly a float.
  Eigen::Matrix3Xf single(3, static_cast<Eigen::Index>(rows) * cols);
  mesh.regions.resize(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const double t = t_of(r);
    const double y_unit = t * spec.vertical_extent;
    const double ring = std::sqrt(1.0 - y_unit * y_unit);
    for (int c = 0; c < cols; ++c) {
      const double s = s_of(c);
      const double theta = s * max_azimuth;
      const double rho = relief(s, t);
      const double x = spec.half_width * ring * std::sin(theta) * rho;
      const double y = spec.half_height * y_unit;
      const double z = spec.half_depth * ring * std::cos(theta) * rho;
      const int i = vid(r, c);
      single(0, i) = static_cast<float>(x);
      single(1, i) = static_cast<float>(y);
      single(2, i) = static_cast<float>(z);
      mesh.regions[static_cast<std::size_t>(i)] = classify(s, t);
    }
  }

  mesh.vertices = single.cast<double>();

  // Two counter-clockwise triangles per lattice quad (viewed from +z).
  mesh.facets.reserve(static_cast<std::size_t>(rows - 1) * (cols - 1) * 2);
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const int top_left = vid(r, c);
      const int top_right = vid(r, c + 1);
      const int bottom_left = vid(r + 1, c);
      const int bottom_right = vid(r + 1, c + 1);
      mesh.facets.push_back({bottom_left, bottom_right, top_right});
      mesh.facets.push_back({bottom_left, top_right, top_left});
    }
  }

  // Snap each landmark to the nearest lattice vertex not already taken;
  // ties go to the lower vertex index.
  std::set<int> used;
  for (const Point2& p : landmark_layout()) {
    const double fc = (p.s + 1.0) * 0.5 * (cols - 1);
    const double fr = (1.0 - p.t) * 0.5 * (rows - 1);
    int best = -1;
    double best_d2 = 0.0;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int i = vid(r, c);
        if (used.count(i)) continue;
        const double d2 = (r - fr) * (r - fr) + (c - fc) * (c - fc);
        if (best < 0 || d2 < best_d2) {
          best = i;
          best_d2 = d2;
        }
      }
    }
    used.insert(best);
    mesh.landmarks.push_back(best);
    mesh.regions[static_cast<std::size_t>(best)] = Region::kLandmark;
  }

  mesh.edges = facet_edge_set(mesh.facets);
  mesh.edge_source = EdgeSource::kFacets;
  return mesh;
}

}  // namespace uvface
