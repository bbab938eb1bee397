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

#include <vector>

#include "benchmark/benchmark.h"
#include "uvface/fit.h"
#include "uvface/losses.h"
#include "uvface/self_align.h"
#include "uvface/template.h"
#include "uvface/uv_map.h"

namespace uvface {
namespace {

const FaceModel& model() {
  static const FaceModel* m = new FaceModel(FaceModel::build({}, 256, 256));
  return *m;
}

void BM_EstimateSimilarity(benchmark::State& state) {
  const FaceMesh& mean = model().mean;
  PoseTransform pose;
  pose.scale = 1.7;
  pose.rotation = euler_to_rotation({.yaw = 35, .pitch = 10, .roll = -5});
  pose.translation = Eigen::Vector3d(4, 5, 6);
  LandmarkCorrespondence c{mean.landmark_positions(),
                           pose.apply(mean.landmark_positions()),
                           Eigen::VectorXd::Constant(kNumLandmarks, 1.1)};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_similarity(c));
}
BENCHMARK(BM_EstimateSimilarity);

void BM_EncodeUvMap(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_uv_map(model().mean.vertices, model().mapping));
  }
}
BENCHMARK(BM_EncodeUvMap)->Unit(benchmark::kMillisecond);

void BM_PositionLoss(benchmark::State& state) {
  const UVPositionMap a = encode_uv_map(model().mean.vertices, model().mapping);
  const UVPositionMap b =
      encode_uv_map(model().mean.vertices * 1.01, model().mapping);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_position_loss(a, b, model().mask));
  }
}
BENCHMARK(BM_PositionLoss)->Unit(benchmark::kMillisecond);

void BM_EdgeAndNormalLoss(benchmark::State& state) {
  const FaceMesh& mean = model().mean;
  const Eigen::Matrix3Xd s = mean.vertices * 1.01;
  const Eigen::Matrix3Xd normals = facet_normals(mean);
  for (auto _ : state) {
    benchmark::DoNotOptimize(edge_length_loss(s, mean.vertices, model().uv_edges));
    benchmark::DoNotOptimize(normal_vector_loss(s, normals, mean.facets));
  }
}
BENCHMARK(BM_EdgeAndNormalLoss)->Unit(benchmark::kMicrosecond);

void BM_FitIterations(benchmark::State& state) {
  SynthConfig sc;
  sc.seed = 4;
  sc.occlude = false;
  const SynthSample s = synth_dataset(model(), sc)[0];
  FitConfig cfg;
  cfg.max_iterations = static_cast<int>(state.range(0));
  cfg.tolerance = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_sample(model(), {s.posed.vertices, s.landmark_visibility}, cfg));
  }
}
BENCHMARK(BM_FitIterations)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace uvface

BENCHMARK_MAIN();
