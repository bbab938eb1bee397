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

#ifndef UVFACE_MESH_H_
#define UVFACE_MESH_H_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace uvface {

using Facet = std::array<int, 3>;
using Edge = std::pair<int, int>;  // always stored with first < second

// Sub-regions of the face used by the weight mask. The enumerator order is
// the mask priority: landmarks first, neck last.
enum class Region : std::uint8_t {
  kLandmark = 1,
  kOrgan = 2,    // eyes, nose, mouth
  kSkin = 3,     // cheeks, chin, forehead
  kNeck = 4,
};

enum class EdgeSource : std::uint8_t {
  kNone,
  kFacets,  // pairs sharing a facet
  kUvGrid,  // nearest registered neighbours along UV rows/columns
};

// A registered face mesh. Vertices are stored column-wise (3 x n) in model
// units, right-handed with +y up and +z towards the viewer. Facets are
// counter-clockwise when seen from outside.
struct FaceMesh {
  Eigen::Matrix3Xd vertices;
  std::vector<Facet> facets;
  std::vector<int> landmarks;
  std::vector<Edge> edges;
  EdgeSource edge_source = EdgeSource::kNone;
  // Optional per-vertex region labels; empty when unknown.
  std::vector<Region> regions;

  int num_vertices() const { return static_cast<int>(vertices.cols()); }

  // Copy with new vertex positions and the same topology.
  FaceMesh with_vertices(const Eigen::Matrix3Xd& positions) const;

  // Landmark positions as a 3 x k matrix.
  Eigen::Matrix3Xd landmark_positions() const;
};

// Checks index ranges, facet non-degeneracy (distinct indices) and region
// label count. Throws Error on violation.
void validate(const FaceMesh& mesh);

// Unique undirected edges of all facets, sorted.
std::vector<Edge> facet_edge_set(const std::vector<Facet>& facets);

// Unit normal of each facet, n = (a - b) x (b - c) / |...|.
// Throws kDegenerate naming the facet when its area vanishes.
Eigen::Matrix3Xd facet_normals(const FaceMesh& mesh);
Eigen::Matrix3Xd facet_normals(const Eigen::Matrix3Xd& vertices,
                               const std::vector<Facet>& facets);

// Area-weighted average of adjacent facet normals, normalised. Vertices
// without a non-degenerate adjacent facet get the zero vector.
Eigen::Matrix3Xd vertex_normals(const Eigen::Matrix3Xd& vertices,
                                const std::vector<Facet>& facets);

// Axis-aligned bounding box diagonal length.
double bbox_diagonal(const Eigen::Matrix3Xd& vertices);

}  // namespace uvface

#endif  // UVFACE_MESH_H_
