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

#include "uvface/mesh.h"

#include <algorithm>
#include <string>

#include <Eigen/Geometry>

#include "uvface/errors.h"

namespace uvface {

FaceMesh FaceMesh::with_vertices(const Eigen::Matrix3Xd& positions) const {
  if (positions.cols() != vertices.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         "expected " + std::to_string(vertices.cols()) + " vertices, got " +
             std::to_string(positions.cols()));
  }
  FaceMesh out = *this;
  out.vertices = positions;
  return out;
}

Eigen::Matrix3Xd FaceMesh::landmark_positions() const {
  Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(landmarks.size()));
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = vertices.col(landmarks[i]);
  }
  return out;
}

void validate(const FaceMesh& mesh) {
  const int n = mesh.num_vertices();
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const Facet& t = mesh.facets[f];
    for (int idx : t) {
      if (idx < 0 || idx >= n) {
        fail(ErrorCode::kInvalidArgument,
             "facet " + std::to_string(f) + " references vertex " +
                 std::to_string(idx) + " outside [0, " + std::to_string(n) +
                 ")");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      fail(ErrorCode::kInvalidArgument,
           "facet " + std::to_string(f) + " repeats a vertex index");
    }
  }
  for (int idx : mesh.landmarks) {
    if (idx < 0 || idx >= n) {
      fail(ErrorCode::kInvalidArgument,
           "landmark index " + std::to_string(idx) + " out of range");
    }
  }
  for (const Edge& e : mesh.edges) {
    if (e.first < 0 || e.second >= n || e.first >= e.second) {
      fail(ErrorCode::kInvalidArgument, "malformed edge");
    }
  }
  if (!mesh.regions.empty() &&
      static_cast<int>(mesh.regions.size()) != n) {
    fail(ErrorCode::kDimensionMismatch,
         "region label count does not match vertex count");
  }
}

std::vector<Edge> facet_edge_set(const std::vector<Facet>& facets) {
  std::vector<Edge> edges;
  edges.reserve(facets.size() * 3);
  for (const Facet& t : facets) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Eigen::Matrix3Xd facet_normals(const FaceMesh& mesh) {
  return facet_normals(mesh.vertices, mesh.facets);
}

Eigen::Matrix3Xd facet_normals(const Eigen::Matrix3Xd& vertices,
                               const std::vector<Facet>& facets) {
  Eigen::Matrix3Xd normals(3, static_cast<Eigen::Index>(facets.size()));
  for (std::size_t f = 0; f < facets.size(); ++f) {
    const Facet& t = facets[f];
    const Eigen::Vector3d e_ij = vertices.col(t[0]) - vertices.col(t[1]);
    const Eigen::Vector3d e_jk = vertices.col(t[1]) - vertices.col(t[2]);
    const Eigen::Vector3d cross = e_ij.cross(e_jk);
    const double norm = cross.norm();
    const double scale = e_ij.norm() * e_jk.norm();
    if (!(norm > 1e-14 * scale)) {
      fail(ErrorCode::kDegenerate,
           "facet " + std::to_string(f) + " has zero area");
    }
    normals.col(static_cast<Eigen::Index>(f)) = cross / norm;
  }
  return normals;
}

Eigen::Matrix3Xd vertex_normals(const Eigen::Matrix3Xd& vertices,
                                const std::vector<Facet>& facets) {
  Eigen::Matrix3Xd accum = Eigen::Matrix3Xd::Zero(3, vertices.cols());
  for (const Facet& t : facets) {
    // |cross| is twice the facet area, so summing raw cross products gives
    // the area weighting directly.
    const Eigen::Vector3d cross =
        (vertices.col(t[0]) - vertices.col(t[1]))
            .cross(vertices.col(t[1]) - vertices.col(t[2]));
    for (int idx : t) accum.col(idx) += cross;
  }
  for (Eigen::Index i = 0; i < accum.cols(); ++i) {
    const double norm = accum.col(i).norm();
    if (norm > 0.0) accum.col(i) /= norm;
  }
  return accum;
}

double bbox_diagonal(const Eigen::Matrix3Xd& vertices) {
  if (vertices.cols() == 0) return 0.0;
  return (vertices.rowwise().maxCoeff() - vertices.rowwise().minCoeff()).norm();
}

}  // namespace uvface
