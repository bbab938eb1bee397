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
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "test_support.h"
#include "uvface/template.h"

namespace uvface {
namespace {

using ::uvface::testing::random_points;
using ::uvface::testing::random_rotation;

// Central differences of `f` at `x` over every coordinate.
std::vector<double> central_diff(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::sqrt(std::max(na, nb));
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

UVPositionMap random_map(CounterRng& rng, int h, int w, double invalid_rate) {
  UVPositionMap m;
  m.values = Grid<Eigen::Vector3d>(h, w, Eigen::Vector3d::Zero());
  m.valid = BinaryGrid(h, w, 1);
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    if (rng.uniform() < invalid_rate) {
      m.valid[k] = 0;
      continue;
    }
    m.values[k] = random_points(rng, 1, -1, 1).col(0);
  }
  return m;
}

WeightMask random_mask(CounterRng& rng, int h, int w) {
  WeightMask m;
  m.weights = Grid<double>(h, w, 0.0);
  for (std::size_t k = 0; k < m.weights.size(); ++k) {
    const double r = rng.uniform();
    m.weights[k] = r < 0.2 ? 0.0 : rng.uniform(0.1, 3.0);
  }
  return m;
}

TEST(PositionLossTest, EqualMapsGiveZero) {
  CounterRng rng(1);
  const UVPositionMap n = random_map(rng, 6, 5, 0.2);
  const MapLoss l = weighted_position_loss(n, n, random_mask(rng, 6, 5));
  EXPECT_EQ(l.value, 0.0);
  for (std::size_t k = 0; k < l.gradient.size(); ++k) {
    EXPECT_TRUE(l.gradient[k].isZero(0.0));
  }
}

TEST(PositionLossTest, SingleCellHandValue) {
  UVPositionMap n, n_hat;
  n.values = Grid<Eigen::Vector3d>(1, 1, Eigen::Vector3d(3, 4, 0));
  n.valid = BinaryGrid(1, 1, 1);
  n_hat.values = Grid<Eigen::Vector3d>(1, 1, Eigen::Vector3d::Zero());
  n_hat.valid = n.valid;
  WeightMask m;
  m.weights = Grid<double>(1, 1, 2.0);
  const MapLoss l = weighted_position_loss(n, n_hat, m);
  EXPECT_DOUBLE_EQ(l.value, 10.0);
  EXPECT_DOUBLE_EQ(l.gradient[0].x(), 1.2);
  EXPECT_DOUBLE_EQ(l.gradient[0].y(), 1.6);
  EXPECT_EQ(l.gradient[0].z(), 0.0);
}

TEST(PositionLossTest, InvalidCellsAreIgnored) {
  CounterRng rng(2);
  UVPositionMap n = random_map(rng, 4, 4, 0.0);
  UVPositionMap n_hat = random_map(rng, 4, 4, 0.0);
  const WeightMask m = random_mask(rng, 4, 4);
  const double full = weighted_position_loss(n, n_hat, m).value;
  n.valid[5] = 0;
  n_hat.valid[9] = 0;
  const MapLoss part = weighted_position_loss(n, n_hat, m);
  const double expected = full - m.weights[5] * (n.values[5] - n_hat.values[5]).norm() -
                          m.weights[9] * (n.values[9] - n_hat.values[9]).norm();
  EXPECT_NEAR(part.value, expected, 1e-12);
  EXPECT_TRUE(part.gradient[5].isZero(0.0));
  EXPECT_TRUE(part.gradient[9].isZero(0.0));
}

TEST(PositionLossTest, PermutationInvariance) {
  CounterRng rng(3);
  const int h = 8, w = 8;
  const UVPositionMap n = random_map(rng, h, w, 0.1);
  const UVPositionMap n_hat = random_map(rng, h, w, 0.1);
  const WeightMask m = random_mask(rng, h, w);
  std::vector<std::size_t> perm(n.values.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
  }
  UVPositionMap pn = n, pn_hat = n_hat;
  WeightMask pm = m;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    pn.values[k] = n.values[perm[k]];
    pn.valid[k] = n.valid[perm[k]];
    pn_hat.values[k] = n_hat.values[perm[k]];
    pn_hat.valid[k] = n_hat.valid[perm[k]];
    pm.weights[k] = m.weights[perm[k]];
  }
  const double a = weighted_position_loss(n, n_hat, m).value;
  const double b = weighted_position_loss(pn, pn_hat, pm).value;
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(PositionLossTest, GradientMatchesFiniteDifferences) {
  CounterRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const UVPositionMap n = random_map(rng, 5, 4, 0.1);
    const UVPositionMap n_hat = random_map(rng, 5, 4, 0.1);
    const WeightMask m = random_mask(rng, 5, 4);
    std::vector<double> x;
    for (std::size_t k = 0; k < n.values.size(); ++k) {
      for (int a = 0; a < 3; ++a) x.push_back(n.values[k](a));
    }
    auto f = [&](const std::vector<double>& v) {
      UVPositionMap p = n;
      for (std::size_t k = 0; k < p.values.size(); ++k) {
        p.values[k] = Eigen::Vector3d(v[3 * k], v[3 * k + 1], v[3 * k + 2]);
      }
      return weighted_position_loss(p, n_hat, m).value;
    };
    const MapLoss l = weighted_position_loss(n, n_hat, m);
    std::vector<double> an;
    for (std::size_t k = 0; k < l.gradient.size(); ++k) {
      for (int a = 0; a < 3; ++a) an.push_back(l.gradient[k](a));
    }
    EXPECT_LT(rel_err(central_diff(f, x, 1e-5), an), 1e-5);
  }
}

TEST(PositionLossTest, RejectsShapeMismatch) {
  CounterRng rng(5);
  EXPECT_UVFACE_ERROR(weighted_position_loss(random_map(rng, 4, 4, 0),
                                             random_map(rng, 4, 5, 0),
                                             random_mask(rng, 4, 4)),
                      ErrorCode::kDimensionMismatch);
  EXPECT_UVFACE_ERROR(weighted_position_loss(random_map(rng, 4, 4, 0),
                                             random_map(rng, 4, 4, 0),
                                             random_mask(rng, 3, 4)),
                      ErrorCode::kDimensionMismatch);
}

TEST(BceTest, HalfAgainstOneIsLnTwo) {
  const AttentionLoss l = bce_attention_loss(AttentionMask(1, 1, 0.5), BinaryGrid(1, 1, 1));
  EXPECT_NEAR(l.value, std::log(2.0), 1e-15);
  EXPECT_NEAR(l.gradient[0], -2.0, 1e-15);
}

TEST(BceTest, PerfectPredictionHitsClampFloor) {
  const double delta = 1e-7;
  BinaryGrid truth(3, 3, 0);
  truth(1, 1) = truth(0, 2) = 1;
  AttentionMask a(3, 3);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = truth[k];
  const AttentionLoss l = bce_attention_loss(a, truth, delta);
  EXPECT_NEAR(l.value, -std::log(1.0 - delta), 1e-20);
  EXPECT_NEAR(l.value, delta, 1e-13);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(l.gradient[k], 0.0);
}

TEST(BceTest, GradientMatchesFiniteDifferences) {
  CounterRng rng(6);
  const int h = 6, w = 5;
  BinaryGrid truth(h, w);
  AttentionMask a(h, w);
  for (std::size_t k = 0; k < a.size(); ++k) {
    truth[k] = rng.uniform() < 0.5;
    a[k] = rng.uniform(0.01, 0.99);
  }
  auto f = [&](const std::vector<double>& v) {
    AttentionMask p(h, w);
    p.data() = v;
    return bce_attention_loss(p, truth).value;
  };
  const AttentionLoss l = bce_attention_loss(a, truth);
  EXPECT_LT(rel_err(central_diff(f, a.data(), 1e-6), l.gradient.data()), 1e-5);
}

TEST(BceTest, RejectsBadInputs) {
  EXPECT_UVFACE_ERROR(bce_attention_loss(AttentionMask(2, 2), BinaryGrid(2, 3)),
                      ErrorCode::kDimensionMismatch);
  EXPECT_UVFACE_ERROR(bce_attention_loss(AttentionMask(2, 2), BinaryGrid(2, 2), 0.0),
                      ErrorCode::kInvalidArgument);
}

UVMapping grid_mapping(const Grid<int>& at) {
  UVMapping m;
  m.height = at.rows();
  m.width = at.cols();
  m.vertex_at = at;
  return m;
}

TEST(UvEdgeSetTest, SmallGrids) {
  Grid<int> square(2, 2);
  for (int k = 0; k < 4; ++k) square[static_cast<std::size_t>(k)] = k;
  EXPECT_EQ(build_uv_edge_set(grid_mapping(square)).size(), 4u);

  for (int n : {1, 2, 7}) {
    Grid<int> strip(1, n);
    for (int k = 0; k < n; ++k) strip[static_cast<std::size_t>(k)] = k;
    const auto edges = build_uv_edge_set(grid_mapping(strip));
    ASSERT_EQ(edges.size(), static_cast<std::size_t>(n - 1));
    for (int k = 0; k + 1 < n; ++k) EXPECT_EQ(edges[static_cast<std::size_t>(k)], Edge(k, k + 1));
  }
}

TEST(UvEdgeSetTest, SkipsEmptyCellsBetweenNeighbours) {
  Grid<int> g(3, 3, -1);
  g(0, 0) = 0;
  g(0, 2) = 1;
  g(2, 0) = 2;
  const auto edges = build_uv_edge_set(grid_mapping(g));
  EXPECT_EQ(edges, (std::vector<Edge>{{0, 1}, {0, 2}}));
}

TEST(UvEdgeSetTest, TemplateMatchesPairScan) {
  const FaceMesh mean = build_mean_template();
  const UVMapping mapping = compute_uv_mapping(mean, 256, 256);
  const Grid<int>& at = mapping.vertex_at;
  // Brute force: two registered cells on one row or column are linked when
  // no registered cell lies strictly between them.
  std::set<Edge> oracle;
  auto scan = [&](auto cell, int lines, int len) {
    for (int l = 0; l < lines; ++l) {
      for (int a = 0; a < len; ++a) {
        if (cell(l, a) < 0) continue;
        for (int b = a + 1; b < len; ++b) {
          if (cell(l, b) < 0) continue;
          bool blocked = false;
          for (int m = a + 1; m < b && !blocked; ++m) blocked = cell(l, m) >= 0;
          if (!blocked) {
            oracle.insert({std::min(cell(l, a), cell(l, b)), std::max(cell(l, a), cell(l, b))});
          }
        }
      }
    }
  };
  scan([&](int r, int c) { return at(r, c); }, at.rows(), at.cols());
  scan([&](int c, int r) { return at(r, c); }, at.cols(), at.rows());
  const auto edges = build_uv_edge_set(mapping);
  EXPECT_EQ(edges, std::vector<Edge>(oracle.begin(), oracle.end()));
  EXPECT_GT(edges.size(), 2u * 4096u - 200u);
}

TEST(EdgeLossTest, IdenticalMeshesGiveZero) {
  const FaceMesh mean = build_mean_template();
  const VertexLoss l = edge_length_loss(mean.vertices, mean.vertices, mean.edges);
  EXPECT_EQ(l.value, 0.0);
  EXPECT_TRUE(l.gradient.isZero(0.0));
}

TEST(EdgeLossTest, StretchedStripCountsEdges) {
  const int n = 9;
  Eigen::Matrix3Xd unit = Eigen::Matrix3Xd::Zero(3, n);
  for (int i = 0; i < n; ++i) unit(0, i) = i;
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  const VertexLoss l = edge_length_loss(2.0 * unit, unit, edges);
  EXPECT_DOUBLE_EQ(l.value, static_cast<double>(edges.size()));
  // Interior vertices are pulled equally from both sides.
  EXPECT_EQ(l.gradient.col(4), Eigen::Vector3d::Zero());
  EXPECT_EQ(l.gradient.col(0), Eigen::Vector3d(-1, 0, 0));
  EXPECT_EQ(l.gradient.col(n - 1), Eigen::Vector3d(1, 0, 0));
}

TEST(EdgeLossTest, RigidMotionInvariance) {
  const FaceMesh mean = build_mean_template();
  CounterRng rng(7);
  const Eigen::Matrix3Xd s = mean.vertices + random_points(rng, mean.num_vertices(), -2, 2);
  const Eigen::Matrix3Xd rigid =
      (random_rotation(rng) * s).colwise() + Eigen::Vector3d(10, -4, 7);
  const double a = edge_length_loss(s, mean.vertices, mean.edges).value;
  const double b = edge_length_loss(rigid, mean.vertices, mean.edges).value;
  EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, a));
}

TEST(EdgeLossTest, GradientMatchesFiniteDifferences) {
  const FaceMesh mean = build_mean_template({.rows = 12, .cols = 12});
  CounterRng rng(8);
  const Eigen::Matrix3Xd s_hat = mean.vertices;
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix3Xd s = mean.vertices + random_points(rng, mean.num_vertices(), -3, 3);
    auto f = [&](const std::vector<double>& v) {
      return edge_length_loss(Eigen::Map<const Eigen::Matrix3Xd>(v.data(), 3, s.cols()),
                              s_hat, mean.edges).value;
    };
    const VertexLoss l = edge_length_loss(s, s_hat, mean.edges);
    std::vector<double> x(s.data(), s.data() + s.size());
    std::vector<double> an(l.gradient.data(), l.gradient.data() + l.gradient.size());
    EXPECT_LT(rel_err(central_diff(f, x, 1e-6), an), 1e-5);
  }
}

TEST(EdgeLossTest, RejectsSizeMismatch) {
  EXPECT_UVFACE_ERROR(edge_length_loss(Eigen::Matrix3Xd::Zero(3, 4),
                                       Eigen::Matrix3Xd::Zero(3, 5), {}),
                      ErrorCode::kDimensionMismatch);
}

TEST(NormalLossTest, TiltedNormalOnFlatFacet) {
  Eigen::Matrix3Xd s(3, 3);
  s << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  const double h = std::sqrt(0.5);
  const Eigen::Matrix3Xd n = Eigen::Vector3d(h, 0, h);
  const VertexLoss l = normal_vector_loss(s, n, {{0, 1, 2}});
  // Edges (-1,0,0), (1,-1,0)/sqrt2, (0,1,0) against n.
  const double oracle = std::abs(-1.0 * h) + std::abs(h / std::sqrt(2.0)) + 0.0;
  EXPECT_NEAR(l.value, oracle, 1e-15);
  EXPECT_NEAR(l.value, h + 0.5, 1e-15);
}

TEST(NormalLossTest, OwnNormalsGiveZero) {
  CounterRng rng(9);
  const FaceMesh mean = build_mean_template();
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix3Xd s = mean.vertices + random_points(rng, mean.num_vertices(), -3, 3);
    const VertexLoss l = normal_vector_loss(s, facet_normals(s, mean.facets), mean.facets);
    EXPECT_LT(l.value, 1e-12);
  }
}

TEST(NormalLossTest, GradientMatchesFiniteDifferences) {
  const FaceMesh mean = build_mean_template({.rows = 12, .cols = 12});
  CounterRng rng(10);
  const Eigen::Matrix3Xd gt = mean.vertices + random_points(rng, mean.num_vertices(), -4, 4);
  const Eigen::Matrix3Xd normals = facet_normals(gt, mean.facets);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix3Xd s = mean.vertices + random_points(rng, mean.num_vertices(), -4, 4);
    auto f = [&](const std::vector<double>& v) {
      return normal_vector_loss(Eigen::Map<const Eigen::Matrix3Xd>(v.data(), 3, s.cols()),
                                normals, mean.facets).value;
    };
    const VertexLoss l = normal_vector_loss(s, normals, mean.facets);
    std::vector<double> x(s.data(), s.data() + s.size());
    std::vector<double> an(l.gradient.data(), l.gradient.data() + l.gradient.size());
    EXPECT_LT(rel_err(central_diff(f, x, 1e-6), an), 1e-5);
  }
}

TEST(NormalLossTest, RejectsBadInputs) {
  Eigen::Matrix3Xd s = Eigen::Matrix3Xd::Zero(3, 3);
  const Eigen::Matrix3Xd n = Eigen::Vector3d(0, 0, 1);
  EXPECT_UVFACE_ERROR(normal_vector_loss(s, n, {{0, 1, 2}}), ErrorCode::kDegenerate);
  EXPECT_UVFACE_ERROR(normal_vector_loss(s, Eigen::Matrix3Xd::Zero(3, 2), {{0, 1, 2}}),
                      ErrorCode::kDimensionMismatch);
}

TermValue term(double v, std::vector<double> g = {}) { return {v, std::move(g)}; }

TEST(TotalLossTest, DefaultWeightsSumToTwoPointSevenFive) {
  LossTerms t;
  for (auto& x : t) x = term(1.0);
  EXPECT_NEAR(total_loss(t, LossConfig{}).total, 2.75, 1e-15);
}

TEST(TotalLossTest, ZeroWeightsGiveZero) {
  LossTerms t;
  for (auto& x : t) x = term(3.0, {1.0, 2.0});
  LossConfig cfg;
  cfg.beta_geometry = cfg.beta_deformation = cfg.beta_pose_dependent = 0;
  cfg.beta_attention = cfg.beta_edge = cfg.beta_normal = 0;
  const LossReport r = total_loss(t, cfg);
  EXPECT_EQ(r.total, 0.0);
  EXPECT_EQ(r.weighted_gradients[0], (std::vector<double>{0.0, 0.0}));
}

TEST(TotalLossTest, RandomTermsMatchDotProduct) {
  CounterRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    LossConfig cfg;
    cfg.beta_geometry = rng.uniform(0, 2);
    cfg.beta_deformation = rng.uniform(0, 2);
    cfg.beta_pose_dependent = rng.uniform(0, 2);
    cfg.beta_attention = rng.uniform(0, 2);
    cfg.beta_edge = rng.uniform(0, 2);
    cfg.beta_normal = rng.uniform(0, 2);
    const double betas[] = {cfg.beta_geometry, cfg.beta_deformation,
                            cfg.beta_pose_dependent, cfg.beta_attention,
                            cfg.beta_edge, cfg.beta_normal};
    LossTerms t;
    double expected = 0.0;
    for (int k = 0; k < kNumLossTerms; ++k) {
      const double v = rng.uniform(0, 100);
      const double g = rng.uniform(-1, 1);
      t[static_cast<std::size_t>(k)] = term(v, {g});
      expected += betas[k] * v;
    }
    const LossReport r = total_loss(t, cfg);
    EXPECT_NEAR(r.total, expected, 1e-12 * std::max(1.0, expected));
    for (int k = 0; k < kNumLossTerms; ++k) {
      EXPECT_EQ(r.weighted_gradients[static_cast<std::size_t>(k)][0],
                betas[k] * t[static_cast<std::size_t>(k)]->gradient[0]);
    }
  }
}

TEST(TotalLossTest, MissingTermsNeedZeroWeight) {
  LossTerms t;
  t[0] = term(1.0);
  EXPECT_UVFACE_ERROR(total_loss(t, LossConfig{}), ErrorCode::kInvalidArgument);
  LossConfig cfg;
  cfg.beta_deformation = cfg.beta_pose_dependent = cfg.beta_attention = 0;
  cfg.beta_edge = cfg.beta_normal = 0;
  const LossReport r = total_loss(t, cfg);
  EXPECT_NEAR(r.total, 0.1, 1e-17);
  EXPECT_TRUE(r.present[0]);
  EXPECT_FALSE(r.present[1]);
}

TEST(TotalLossTest, RejectsNegativeWeightAndBadClamp) {
  LossTerms t;
  for (auto& x : t) x = term(1.0);
  LossConfig cfg;
  cfg.beta_edge = -0.1;
  EXPECT_UVFACE_ERROR(total_loss(t, cfg), ErrorCode::kInvalidArgument);
  LossConfig clamp;
  clamp.bce_delta = 0.02;
  EXPECT_UVFACE_ERROR(validate(clamp), ErrorCode::kInvalidArgument);
}

TEST(TotalLossTest, ReportKeepsFifteenDigits) {
  LossTerms t;
  for (auto& x : t) x = term(1.0 / 3.0);
  const std::string text = format_loss_report(total_loss(t, LossConfig{}));
  EXPECT_NE(text.find("L_G 0.33333333333333"), std::string::npos) << text;
  EXPECT_NE(text.find("L_V "), std::string::npos);
  const auto last = text.rfind("total ");
  ASSERT_NE(last, std::string::npos);
  EXPECT_NEAR(std::stod(text.substr(last + 6)), 2.75 / 3.0, 1e-15);
  EXPECT_EQ(text.back(), '\n');
}

}  // namespace
}  // namespace uvface
