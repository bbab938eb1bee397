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

#include "uvface/fit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gtest/gtest.h"
#include "test_support.h"
#include "uvface/self_align.h"

namespace uvface {
namespace {

using ::uvface::testing::random_points;
using ::uvface::testing::rotation_angle_deg;

const FaceModel& small_model() {
  static const FaceModel* model =
      new FaceModel(FaceModel::build({.rows = 32, .cols = 32}, 128, 128));
  return *model;
}

SynthConfig clean_config(std::uint64_t seed, int count) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.yaw_min = -80;
  cfg.yaw_max = 80;
  cfg.occlude = false;
  cfg.image_size = 128;
  return cfg;
}

FitTarget target_of(const SynthSample& s) {
  return {s.posed.vertices, Eigen::VectorXd::Ones(s.landmark_visibility.size())};
}

// Mean distance between the fitted and observed vertices, in units of the
// template bounding box diagonal.
double dense_error(const FaceModel& model, const FitResult& fit,
                   const SynthSample& s) {
  const Eigen::Matrix3Xd g = fit.pose.apply(Eigen::Matrix3Xd(model.mean.vertices + fit.deformation));
  return (g - s.posed.vertices).colwise().norm().mean() / s.pose.scale /
         bbox_diagonal(model.mean.vertices);
}

TEST(SynthTest, ZeroMagnitudeGivesTheTemplate) {
  SynthConfig cfg = clean_config(3, 4);
  cfg.deformation_magnitude = 0.0;
  for (const SynthSample& s : synth_dataset(small_model(), cfg)) {
    EXPECT_TRUE(s.deformation.isZero(0.0));
    EXPECT_TRUE(s.shape.vertices == small_model().mean.vertices);
  }
}

TEST(SynthTest, SameSeedSameSamples) {
  SynthConfig cfg = clean_config(7, 3);
  cfg.occlude = true;
  const auto a = synth_dataset(small_model(), cfg);
  const auto b = synth_dataset(small_model(), cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_TRUE(a[k].posed.vertices == b[k].posed.vertices);
    EXPECT_TRUE(a[k].deformation == b[k].deformation);
    EXPECT_EQ(a[k].attention, b[k].attention);
    EXPECT_EQ(a[k].occluder, b[k].occluder);
    EXPECT_TRUE(a[k].vertex_visibility == b[k].vertex_visibility);
  }
  cfg.seed = 8;
  EXPECT_FALSE(synth_dataset(small_model(), cfg)[0].posed.vertices == a[0].posed.vertices);
}

TEST(SynthTest, PosedIsComposedShapeUnderPose) {
  const auto samples = synth_dataset(small_model(), clean_config(11, 5));
  for (const SynthSample& s : samples) {
    EXPECT_TRUE(s.posed.vertices ==
                apply_pose(compose_shape(small_model().mean, s.deformation), s.pose).vertices);
    EXPECT_TRUE(s.pose.rotation == euler_to_rotation(s.angles));
  }
}

TEST(SynthTest, DefaultYawRangeIsRespected) {
  SynthConfig cfg;
  cfg.count = 1000;
  cfg.image_size = 64;
  cfg.occlude = false;
  cfg.deformation_magnitude = 0.0;
  const FaceModel model = FaceModel::build({.rows = 16, .cols = 16}, 64, 64);
  double lo = 1e9, hi = -1e9;
  for (const SynthSample& s : synth_dataset(model, cfg)) {
    ASSERT_GE(s.angles.yaw, -90.0);
    ASSERT_LE(s.angles.yaw, 90.0);
    ASSERT_GE(s.angles.pitch, -30.0);
    ASSERT_LE(s.angles.roll, 30.0);
    lo = std::min(lo, s.angles.yaw);
    hi = std::max(hi, s.angles.yaw);
  }
  EXPECT_LT(lo, -80.0);
  EXPECT_GT(hi, 80.0);
}

TEST(SynthTest, DeformationPeakMatchesMagnitude) {
  const FaceModel& model = small_model();
  const double diag = bbox_diagonal(model.mean.vertices);
  const Eigen::Matrix3Xd d = smooth_deformation(model, 4, 0.05 * diag, 99);
  EXPECT_NEAR(d.colwise().norm().maxCoeff(), 0.05 * diag, 1e-9 * diag);
  EXPECT_TRUE(smooth_deformation(model, 4, 0.05 * diag, 99) == d);
}

TEST(SynthTest, FrontalFaceIsMostlyVisible) {
  SynthConfig cfg = clean_config(5, 1);
  cfg.yaw_min = cfg.yaw_max = 0;
  cfg.pitch_min = cfg.pitch_max = 0;
  cfg.roll_min = cfg.roll_max = 0;
  const SynthSample s = synth_dataset(small_model(), cfg)[0];
  EXPECT_GT(s.landmark_visibility.mean(), 0.9);
  EXPECT_GT(s.vertex_visibility.mean(), 0.8);
}

TEST(SynthTest, RejectsBadConfigs) {
  SynthConfig cfg;
  cfg.yaw_min = 10;
  cfg.yaw_max = -10;
  EXPECT_UVFACE_ERROR(validate(cfg), ErrorCode::kInvalidArgument);
  SynthConfig small;
  small.image_size = 4;
  EXPECT_UVFACE_ERROR(validate(small), ErrorCode::kInvalidArgument);
  SynthConfig neg;
  neg.count = -1;
  EXPECT_UVFACE_ERROR(validate(neg), ErrorCode::kInvalidArgument);
}

TEST(FitTest, UndeformedIdentityTargetIsAFixedPoint) {
  const FaceModel& model = small_model();
  FitTarget t{model.mean.vertices, Eigen::VectorXd::Ones(kNumLandmarks)};
  FitConfig cfg;
  cfg.max_iterations = 50;
  const FitResult r = fit_sample(model, t, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 50);
  EXPECT_LT(r.deformation.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((r.pose.rotation - Eigen::Matrix3d::Identity()).norm(), 1e-8);
  EXPECT_NEAR(r.pose.scale, 1.0, 1e-8);
  EXPECT_LT(r.pose.translation.norm(), 1e-8);
}

TEST(FitTest, SmoothDeformationIsRecovered) {
  const FaceModel& model = small_model();
  for (const SynthSample& s : synth_dataset(model, clean_config(21, 3))) {
    const FitResult r = fit_sample(model, target_of(s), FitConfig{});
    EXPECT_LT(dense_error(model, r, s), 0.01);
    EXPECT_TRUE(r.monotone);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      EXPECT_LE(r.trace[k].total, r.trace[k - 1].total);
    }
  }
}

TEST(FitTest, DeterministicAndTraceFormatted) {
  const FaceModel& model = small_model();
  const SynthSample s = synth_dataset(model, clean_config(22, 1))[0];
  FitConfig cfg;
  cfg.max_iterations = 20;
  const FitResult a = fit_sample(model, target_of(s), cfg);
  const FitResult b = fit_sample(model, target_of(s), cfg);
  EXPECT_TRUE(a.deformation == b.deformation);
  EXPECT_TRUE(a.pose.rotation == b.pose.rotation);
  const std::string text = format_trace(a.trace);
  EXPECT_EQ(text, format_trace(b.trace));
  EXPECT_EQ(text.substr(0, text.find('\n')), "iter,total,L_P,L_G,L_D,L_E,L_V");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            a.trace.size() + 1);
  EXPECT_EQ(a.trace.front().terms[0], 0.0);
}

TEST(FitTest, RejectsBadInputs) {
  const FaceModel& model = small_model();
  FitConfig bad;
  bad.step_size = 0.0;
  FitTarget t{model.mean.vertices, Eigen::VectorXd::Ones(kNumLandmarks)};
  EXPECT_UVFACE_ERROR(fit_sample(model, t, bad), ErrorCode::kInvalidArgument);
  FitTarget wrong{Eigen::Matrix3Xd::Zero(3, 5), Eigen::VectorXd::Ones(kNumLandmarks)};
  EXPECT_UVFACE_ERROR(fit_sample(model, wrong, FitConfig{}), ErrorCode::kDimensionMismatch);
}

// 20% of the landmarks hidden and their observations corrupted. The weighted
// fit is compared with the clean run and with a uniform-weight baseline.
TEST(FitTest, OccludedLandmarksAreDownweighted) {
  const FaceModel& model = small_model();
  const double face = bbox_diagonal(model.mean.vertices);
  FitConfig cfg;
  cfg.max_iterations = 60;
  int beats_baseline = 0;
  int within_twice_clean = 0;
  const int trials = 100;
  for (int seed = 0; seed < trials; ++seed) {
    const SynthSample s = synth_dataset(model, clean_config(1000 + seed, 1))[0];
    CounterRng rng(seed, 0x0cc);
    FitTarget occluded = target_of(s);
    int hidden = 0;
    while (hidden < kNumLandmarks / 5) {
      const auto j = rng.uniform_int(0, kNumLandmarks - 1);
      if (occluded.landmark_visibility(j) == 0.0) continue;
      occluded.landmark_visibility(j) = 0.0;
      Eigen::Vector3d dir = random_points(rng, 1, -1, 1).col(0);
      dir *= 0.5 * face * s.pose.scale / dir.norm();
      occluded.observed.col(model.mean.landmarks[static_cast<std::size_t>(j)]) += dir;
      ++hidden;
    }
    FitTarget baseline = occluded;
    baseline.landmark_visibility.setOnes();

    const double clean = rotation_angle_deg(
        fit_sample(model, target_of(s), cfg).pose.rotation, s.pose.rotation);
    const double weighted = rotation_angle_deg(
        fit_sample(model, occluded, cfg).pose.rotation, s.pose.rotation);
    const double plain = rotation_angle_deg(
        fit_sample(model, baseline, cfg).pose.rotation, s.pose.rotation);
    beats_baseline += weighted < plain;
    within_twice_clean += weighted <= 2.0 * clean;
  }
  EXPECT_GE(beats_baseline, 90);
  EXPECT_GE(within_twice_clean, 90);
  std::printf("weighted beats uniform baseline in %d/%d, within 2x clean in %d/%d\n",
              beats_baseline, trials, within_twice_clean, trials);
}

TEST(GradientCheckTest, AllTermsAgreeWithFiniteDifferences) {
  const std::vector<TermCheck> report = check_gradients();
  ASSERT_EQ(report.size(), 5u);
  const char* names[] = {"L_G", "L_D", "L_P", "L_E", "L_V"};
  for (std::size_t k = 0; k < report.size(); ++k) {
    EXPECT_EQ(report[k].name, names[k]);
    EXPECT_EQ(report[k].points, 100);
    EXPECT_TRUE(std::isfinite(report[k].max_relative_error));
    EXPECT_LT(report[k].max_relative_error, 1e-5) << report[k].name;
  }
  const std::string text = format_gradient_report(report);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

}  // namespace
}  // namespace uvface
