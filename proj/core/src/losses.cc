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

#include "uvface/losses.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "uvface/errors.h"

namespace uvface {
namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void check_same_size(const Eigen::Matrix3Xd& a, const Eigen::Matrix3Xd& b,
                     const char* what) {
  if (a.cols() != b.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": " + std::to_string(a.cols()) + " vs " +
             std::to_string(b.cols()) + " vertices");
  }
}

}  // namespace

const char* loss_term_name(LossTerm term) {
  switch (term) {
    case LossTerm::kGeometry:
      return "L_G";
    case LossTerm::kDeformation:
      return "L_D";
    case LossTerm::kPoseDependent:
      return "L_P";
    case LossTerm::kAttention:
      return "L_A";
    case LossTerm::kEdge:
      return "L_E";
    case LossTerm::kNormal:
      return "L_V";
  }
  return "?";
}

double LossConfig::beta(LossTerm term) const {
  switch (term) {
    case LossTerm::kGeometry:
      return beta_geometry;
    case LossTerm::kDeformation:
      return beta_deformation;
    case LossTerm::kPoseDependent:
      return beta_pose_dependent;
    case LossTerm::kAttention:
      return beta_attention;
    case LossTerm::kEdge:
      return beta_edge;
    case LossTerm::kNormal:
      return beta_normal;
  }
  return 0.0;
}

void validate(const LossConfig& cfg) {
  for (int k = 0; k < kNumLossTerms; ++k) {
    const double b = cfg.beta(static_cast<LossTerm>(k));
    if (!(b >= 0.0) || !std::isfinite(b)) {
      fail(ErrorCode::kInvalidArgument,
           std::string("loss weight for ") +
               loss_term_name(static_cast<LossTerm>(k)) +
               " must be non-negative");
    }
  }
  if (!(cfg.bce_delta > 0.0 && cfg.bce_delta <= 0.01)) {
    fail(ErrorCode::kInvalidArgument, "BCE clamp must lie in (0, 0.01]");
  }
}

MapLoss weighted_position_loss(const UVPositionMap& n,
                               const UVPositionMap& n_hat,
                               const WeightMask& m) {
  if (!n.values.same_shape(n_hat.values) || !n.values.same_shape(n.valid) ||
      !n_hat.values.same_shape(n_hat.valid) ||
      m.weights.rows() != n.height() || m.weights.cols() != n.width()) {
    fail(ErrorCode::kDimensionMismatch,
         "position maps and weight mask must share one resolution");
  }
  MapLoss out;
  out.gradient = Grid<Eigen::Vector3d>(n.height(), n.width(),
                                       Eigen::Vector3d::Zero());
  for (std::size_t k = 0; k < n.values.size(); ++k) {
    if (!n.valid[k] || !n_hat.valid[k]) continue;
    const double w = m.weights[k];
    if (w == 0.0) continue;
    const Eigen::Vector3d diff = n.values[k] - n_hat.values[k];
    const double dist = diff.norm();
    out.value += w * dist;
    if (dist > 0.0) out.gradient[k] = (w / dist) * diff;
  }
  return out;
}

AttentionLoss bce_attention_loss(const AttentionMask& a,
                                 const BinaryGrid& a_hat, double delta) {
  if (!a.same_shape(a_hat)) {
    fail(ErrorCode::kDimensionMismatch,
         "attention prediction and ground truth differ in size");
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    fail(ErrorCode::kInvalidArgument, "BCE clamp must lie in (0, 0.5)");
  }
  AttentionLoss out;
  out.gradient = Grid<double>(a.rows(), a.cols(), 0.0);
  if (a.empty()) return out;
  const double inv_n = 1.0 / static_cast<double>(a.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double raw = a[k];
    const double p = std::clamp(raw, delta, 1.0 - delta);
    const double y = a_hat[k] ? 1.0 : 0.0;
    sum += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    if (raw > delta && raw < 1.0 - delta) {
      out.gradient[k] = inv_n * (-y / p + (1.0 - y) / (1.0 - p));
    }
  }
  out.value = sum * inv_n;
  return out;
}

std::vector<Edge> build_uv_edge_set(const UVMapping& mapping) {
  std::vector<Edge> edges;
  const Grid<int>& at = mapping.vertex_at;
  auto link = [&edges](int prev, int cur) {
    edges.emplace_back(std::min(prev, cur), std::max(prev, cur));
  };
  for (int r = 0; r < at.rows(); ++r) {
    int prev = -1;
    for (int c = 0; c < at.cols(); ++c) {
      const int v = at(r, c);
      if (v < 0) continue;
      if (prev >= 0) link(prev, v);
      prev = v;
    }
  }
  for (int c = 0; c < at.cols(); ++c) {
    int prev = -1;
    for (int r = 0; r < at.rows(); ++r) {
      const int v = at(r, c);
      if (v < 0) continue;
      if (prev >= 0) link(prev, v);
      prev = v;
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

VertexLoss edge_length_loss(const Eigen::Matrix3Xd& s,
                            const Eigen::Matrix3Xd& s_hat,
                            const std::vector<Edge>& edges) {
  check_same_size(s, s_hat, "edge length loss");
  VertexLoss out;
  out.gradient = Eigen::Matrix3Xd::Zero(3, s.cols());
  for (const auto& [i, j] : edges) {
    const Eigen::Vector3d e = s.col(i) - s.col(j);
    const double len = e.norm();
    const double gap = len - (s_hat.col(i) - s_hat.col(j)).norm();
    out.value += std::abs(gap);
    if (len == 0.0 || gap == 0.0) continue;
    const Eigen::Vector3d g = (sign(gap) / len) * e;
    out.gradient.col(i) += g;
    out.gradient.col(j) -= g;
  }
  return out;
}

VertexLoss normal_vector_loss(const Eigen::Matrix3Xd& s,
                              const Eigen::Matrix3Xd& gt_normals,
                              const std::vector<Facet>& facets) {
  if (gt_normals.cols() != static_cast<Eigen::Index>(facets.size())) {
    fail(ErrorCode::kDimensionMismatch,
         "need one ground-truth normal per facet");
  }
  VertexLoss out;
  out.gradient = Eigen::Matrix3Xd::Zero(3, s.cols());
  for (std::size_t f = 0; f < facets.size(); ++f) {
    const Facet& t = facets[f];
    const Eigen::Vector3d n = gt_normals.col(static_cast<Eigen::Index>(f));
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      const Eigen::Vector3d e = s.col(a) - s.col(b);
      const double len = e.norm();
      if (len == 0.0) {
        fail(ErrorCode::kDegenerate,
             "facet " + std::to_string(f) + " has a zero-length edge");
      }
      const Eigen::Vector3d unit = e / len;
      const double d = unit.dot(n);
      out.value += std::abs(d);
      if (d == 0.0) continue;
      // d/dE <E/|E|, n> = (n - d * unit) / |E|.
      const Eigen::Vector3d g = (sign(d) / len) * (n - d * unit);
      out.gradient.col(a) += g;
      out.gradient.col(b) -= g;
    }
  }
  return out;
}

LossReport total_loss(const LossTerms& terms, const LossConfig& cfg) {
  validate(cfg);
  LossReport report;
  for (int k = 0; k < kNumLossTerms; ++k) {
    const auto term = static_cast<LossTerm>(k);
    const double beta = cfg.beta(term);
    const auto& in = terms[static_cast<std::size_t>(k)];
    if (!in) {
      if (beta != 0.0) {
        fail(ErrorCode::kInvalidArgument,
             std::string(loss_term_name(term)) +
                 " is missing but has a non-zero weight");
      }
      continue;
    }
    report.present[static_cast<std::size_t>(k)] = true;
    report.values[static_cast<std::size_t>(k)] = in->value;
    report.total += beta * in->value;
    auto& g = report.weighted_gradients[static_cast<std::size_t>(k)];
    g.resize(in->gradient.size());
    std::transform(in->gradient.begin(), in->gradient.end(), g.begin(),
                   [beta](double x) { return beta * x; });
  }
  return report;
}

std::string format_loss_report(const LossReport& report) {
  std::string out;
  char buf[64];
  for (int k = 0; k < kNumLossTerms; ++k) {
    if (!report.present[static_cast<std::size_t>(k)]) continue;
    std::snprintf(buf, sizeof(buf), "%s %.17g\n",
                  loss_term_name(static_cast<LossTerm>(k)),
                  report.values[static_cast<std::size_t>(k)]);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "total %.17g\n", report.total);
  out += buf;
  return out;
}

}  // namespace uvface
