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

#include "uvface/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "uvface/errors.h"
#include "uvface/rng.h"

namespace uvface {
namespace {

void check_points(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& gt) {
  if (pred.rows() != gt.rows() || pred.cols() != gt.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         "prediction and ground truth differ in shape");
  }
  if (gt.rows() != 2 && gt.rows() != 3) {
    fail(ErrorCode::kInvalidArgument, "points must be 2D or 3D");
  }
  if (gt.cols() == 0) fail(ErrorCode::kInvalidArgument, "no points");
}

double mean_distance(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& gt) {
  return (pred - gt).colwise().norm().mean();
}

}  // namespace

double nme_bbox(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& gt) {
  check_points(pred, gt);
  const Eigen::Vector2d lo = gt.topRows<2>().rowwise().minCoeff();
  const Eigen::Vector2d hi = gt.topRows<2>().rowwise().maxCoeff();
  const double w = hi.x() - lo.x();
  const double h = hi.y() - lo.y();
  const double d = std::sqrt(h * w);
  if (!(d > 0.0)) {
    fail(ErrorCode::kDegenerate, "ground-truth bounding box has zero area");
  }
  return mean_distance(pred, gt) / d;
}

double nme_interocular(const Eigen::Matrix3Xd& pred, const Eigen::Matrix3Xd& gt,
                       int left_outer, int right_outer) {
  check_points(pred, gt);
  const auto n = static_cast<int>(gt.cols());
  if (left_outer < 0 || right_outer < 0 || left_outer >= n ||
      right_outer >= n) {
    fail(ErrorCode::kInvalidArgument, "eye corner index out of range");
  }
  const double d = (gt.col(left_outer) - gt.col(right_outer)).norm();
  if (!(d > 0.0)) {
    fail(ErrorCode::kDegenerate, "interocular distance is zero");
  }
  return mean_distance(pred, gt) / d;
}

double angle_error_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  if (d > 180.0) d = 360.0 - d;
  return d;
}

std::vector<PoseError> pose_errors(std::span<const EulerAngles> pred,
                                   std::span<const EulerAngles> gt) {
  if (pred.size() != gt.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "pose lists differ in length: " + std::to_string(pred.size()) +
             " vs " + std::to_string(gt.size()));
  }
  std::vector<PoseError> out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    out[i] = {angle_error_deg(pred[i].yaw, gt[i].yaw),
              angle_error_deg(pred[i].pitch, gt[i].pitch),
              angle_error_deg(pred[i].roll, gt[i].roll)};
  }
  return out;
}

PoseMae mae_from_errors(std::span<const PoseError> errors) {
  PoseMae out;
  out.count = errors.size();
  if (errors.empty()) return out;
  for (const PoseError& e : errors) {
    out.yaw += e.yaw;
    out.pitch += e.pitch;
    out.roll += e.roll;
  }
  const auto n = static_cast<double>(errors.size());
  out.yaw /= n;
  out.pitch /= n;
  out.roll /= n;
  out.mean = (out.yaw + out.pitch + out.roll) / 3.0;
  return out;
}

PoseMae mae_pose(std::span<const EulerAngles> pred,
                 std::span<const EulerAngles> gt) {
  const std::vector<PoseError> errors = pose_errors(pred, gt);
  return mae_from_errors(errors);
}

GimbalFilterResult gimbal_fix_filter(std::span<const PoseError> errors) {
  GimbalFilterResult out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const PoseError& e = errors[i];
    const bool locked = (e.pitch > kGimbalPitchRollThresholdDeg ||
                         e.roll > kGimbalPitchRollThresholdDeg) &&
                        e.yaw < kGimbalYawThresholdDeg;
    (locked ? out.dropped : out.retained).push_back(i);
  }
  return out;
}

int yaw_bin(double yaw_deg) {
  const double a = std::abs(yaw_deg);
  if (!(a <= 90.0)) {
    fail(ErrorCode::kInvalidArgument,
         "|yaw| of " + std::to_string(a) + " is outside [0, 90]");
  }
  if (a < 30.0) return 0;
  if (a < 60.0) return 1;
  return 2;
}

const char* yaw_bin_label(int bin) {
  switch (bin) {
    case 0:
      return "0-30";
    case 1:
      return "30-60";
    case 2:
      return "60-90";
  }
  return "?";
}

YawBinnedReport yaw_binned_report(std::span<const BinnedSample> samples,
                                  std::uint64_t seed) {
  YawBinnedReport out;
  std::array<std::vector<std::size_t>, kNumYawBins> members;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    members[static_cast<std::size_t>(yaw_bin(samples[i].gt_yaw_deg))].push_back(i);
  }
  double total = 0.0;
  for (int b = 0; b < kNumYawBins; ++b) {
    const auto& idx = members[static_cast<std::size_t>(b)];
    BinStat& stat = out.bins[static_cast<std::size_t>(b)];
    stat.count = idx.size();
    stat.present = !idx.empty();
    double sum = 0.0;
    for (std::size_t i : idx) sum += samples[i].nme;
    total += sum;
    if (stat.present) stat.mean = sum / static_cast<double>(idx.size());
  }
  out.overall.count = samples.size();
  out.overall.present = !samples.empty();
  if (out.overall.present) {
    out.overall.mean = total / static_cast<double>(samples.size());
  }

  std::size_t per_bin = samples.size();
  for (const auto& idx : members) per_bin = std::min(per_bin, idx.size());
  if (per_bin == 0) {
    out.notice = "balanced subset skipped: at least one yaw bin is empty";
    return out;
  }
  // Partial Fisher-Yates per bin, in bin order, from one seeded stream.
  CounterRng rng(seed, /*stream=*/0xba1a);
  double sum = 0.0;
  for (auto idx : members) {
    for (std::size_t k = 0; k < per_bin; ++k) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(
          static_cast<std::int64_t>(k), static_cast<std::int64_t>(idx.size()) - 1));
      std::swap(idx[k], idx[j]);
      out.balanced_indices.push_back(idx[k]);
      sum += samples[idx[k]].nme;
    }
  }
  BinStat balanced;
  balanced.present = true;
  balanced.count = out.balanced_indices.size();
  balanced.mean = sum / static_cast<double>(balanced.count);
  out.balanced = balanced;
  return out;
}

std::string format_binned_report(const std::string& metric,
                                 const YawBinnedReport& report) {
  std::string out;
  char buf[160];
  auto line = [&](const char* bin, const BinStat& s) {
    std::snprintf(buf, sizeof(buf), "%s %s %.17g %zu\n", metric.c_str(), bin,
                  s.mean, s.count);
    out += buf;
  };
  for (int b = 0; b < kNumYawBins; ++b) {
    const BinStat& s = report.bins[static_cast<std::size_t>(b)];
    if (s.present) line(yaw_bin_label(b), s);
  }
  if (report.balanced) line("balanced", *report.balanced);
  if (report.overall.present) line("all", report.overall);
  return out;
}

}  // namespace uvface
