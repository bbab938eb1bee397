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

#ifndef UVFACE_EVAL_H_
#define UVFACE_EVAL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uvface/pose.h"

namespace uvface {

// Mean point-to-point distance over sqrt(h * w), where h and w are the
// extents of the ground-truth bounding box in the image plane (x, y).
// Points are columns of a 2 x N or 3 x N matrix. Throws kDegenerate for a
// zero-area box.
double nme_bbox(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& gt);

// Mean 3D distance over the ground-truth outer interocular distance.
double nme_interocular(const Eigen::Matrix3Xd& pred, const Eigen::Matrix3Xd& gt,
                       int left_outer, int right_outer);

// |a - b| wrapped into [0, 180] degrees.
double angle_error_deg(double a, double b);

struct PoseError {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

std::vector<PoseError> pose_errors(std::span<const EulerAngles> pred,
                                   std::span<const EulerAngles> gt);

struct PoseMae {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  double mean = 0.0;  // of the three axes
  std::size_t count = 0;
};

// Per-axis mean absolute (wrapped) error.
PoseMae mae_pose(std::span<const EulerAngles> pred,
                 std::span<const EulerAngles> gt);
PoseMae mae_from_errors(std::span<const PoseError> errors);

inline constexpr double kGimbalPitchRollThresholdDeg = 20.0;
inline constexpr double kGimbalYawThresholdDeg = 5.0;

struct GimbalFilterResult {
  std::vector<std::size_t> retained;
  std::vector<std::size_t> dropped;
};

// Drops samples whose pitch or roll error exceeds 20 degrees while the yaw
// error stays below 5 degrees (orientation right, decomposition locked).
GimbalFilterResult gimbal_fix_filter(std::span<const PoseError> errors);

// One evaluated sample for binned reporting.
struct BinnedSample {
  double nme = 0.0;
  double gt_yaw_deg = 0.0;
};

inline constexpr int kNumYawBins = 3;
// [0, 30), [30, 60), [60, 90]; uses |yaw|.
int yaw_bin(double yaw_deg);
const char* yaw_bin_label(int bin);

struct BinStat {
  bool present = false;
  double mean = 0.0;
  std::size_t count = 0;
};

struct YawBinnedReport {
  std::array<BinStat, kNumYawBins> bins;
  // Set when every bin is populated: equal-size seeded subsample per bin.
  std::optional<BinStat> balanced;
  std::vector<std::size_t> balanced_indices;
  BinStat overall;
  std::string notice;
};

// Throws kInvalidArgument when a |yaw| exceeds 90 degrees.
YawBinnedReport yaw_binned_report(std::span<const BinnedSample> samples,
                                  std::uint64_t seed);

// `metric bin value count` records.
std::string format_binned_report(const std::string& metric,
                                 const YawBinnedReport& report);

}  // namespace uvface

#endif  // UVFACE_EVAL_H_
