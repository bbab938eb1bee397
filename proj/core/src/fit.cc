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
#include <numbers>
#include <string>

#include "uvface/errors.h"
#include "uvface/rng.h"
#include "uvface/self_align.h"

namespace uvface {
namespace {

// Below this total per valid cell the target is matched.
constexpr double kZeroLossPerCell = 1e-12;

constexpr int kTraceP = 0, kTraceG = 1, kTraceD = 2, kTraceE = 3, kTraceV = 4;

std::vector<double> flatten(const Eigen::Matrix3Xd& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

// Quantities derived from the observation under the current pose.
struct Observation {
  UVPositionMap posed_map;      // encode(P_obs)
  Eigen::Matrix3Xd unposed;     // pose^-1 (P_obs)
  UVPositionMap deformation_map;  // encode(unposed - mean)
  Eigen::Matrix3Xd normals;     // facet normals of `unposed`
};

Observation observe(const FaceModel& model, const UVPositionMap& posed_map,
                    const Eigen::Matrix3Xd& observed,
                    const PoseTransform& pose) {
  Observation obs;
  obs.posed_map = posed_map;
  obs.unposed = pose.inverse().apply(observed);
  obs.deformation_map =
      encode_uv_map(obs.unposed - model.mean.vertices, model.mapping);
  obs.normals = facet_normals(obs.unposed, model.mean.facets);
  return obs;
}

struct Evaluation {
  LossReport report;
  Eigen::Matrix3Xd gradient;  // d total / d deformation
};

Evaluation evaluate(const FaceModel& model, const std::vector<Edge>& edges,
                    const LossConfig& loss_cfg, const Eigen::Matrix3Xd& d,
                    const PoseTransform& pose, const Observation& obs,
                    bool with_gradient) {
  const Eigen::Matrix3Xd shape = model.mean.vertices + d;
  const Eigen::Matrix3Xd geometry = pose.apply(shape);

  const MapLoss lg = weighted_position_loss(
      encode_uv_map(geometry, model.mapping), obs.posed_map, model.mask);
  const MapLoss ld = weighted_position_loss(encode_uv_map(d, model.mapping),
                                            obs.deformation_map, model.mask);
  const VertexLoss le = edge_length_loss(shape, obs.unposed, edges);
  const VertexLoss lv = normal_vector_loss(shape, obs.normals, model.mean.facets);

  LossTerms terms;
  terms[static_cast<int>(LossTerm::kPoseDependent)] = TermValue{0.0, {}};
  Evaluation out;
  if (with_gradient) {
    const Eigen::Matrix3Xd g_geometry =
        pose.scale * pose.rotation.transpose() *
        pull_back_to_vertices(lg.gradient, model.mapping);
    const Eigen::Matrix3Xd g_deformation =
        pull_back_to_vertices(ld.gradient, model.mapping);
    terms[static_cast<int>(LossTerm::kGeometry)] =
        TermValue{lg.value, flatten(g_geometry)};
    terms[static_cast<int>(LossTerm::kDeformation)] =
        TermValue{ld.value, flatten(g_deformation)};
    terms[static_cast<int>(LossTerm::kEdge)] =
        TermValue{le.value, flatten(le.gradient)};
    terms[static_cast<int>(LossTerm::kNormal)] =
        TermValue{lv.value, flatten(lv.gradient)};
  } else {
    terms[static_cast<int>(LossTerm::kGeometry)] = TermValue{lg.value, {}};
    terms[static_cast<int>(LossTerm::kDeformation)] = TermValue{ld.value, {}};
    terms[static_cast<int>(LossTerm::kEdge)] = TermValue{le.value, {}};
    terms[static_cast<int>(LossTerm::kNormal)] = TermValue{lv.value, {}};
  }
  out.report = total_loss(terms, loss_cfg);
  if (with_gradient) {
    out.gradient = Eigen::Matrix3Xd::Zero(3, d.cols());
    for (const auto& g : out.report.weighted_gradients) {
      if (g.empty()) continue;
      out.gradient += Eigen::Map<const Eigen::Matrix3Xd>(g.data(), 3, d.cols());
    }
  }
  return out;
}

TraceRow trace_row(int iteration, const LossReport& r) {
  TraceRow row;
  row.iteration = iteration;
  row.total = r.total;
  row.terms[kTraceP] = r.values[static_cast<int>(LossTerm::kPoseDependent)];
  row.terms[kTraceG] = r.values[static_cast<int>(LossTerm::kGeometry)];
  row.terms[kTraceD] = r.values[static_cast<int>(LossTerm::kDeformation)];
  row.terms[kTraceE] = r.values[static_cast<int>(LossTerm::kEdge)];
  row.terms[kTraceV] = r.values[static_cast<int>(LossTerm::kNormal)];
  return row;
}

std::size_t count_valid(const UVMapping& mapping) {
  return static_cast<std::size_t>(std::count_if(
      mapping.sources.begin(), mapping.sources.end(), [](const CellSource& s) {
        return s.kind != CellSource::Kind::kEmpty;
      }));
}

}  // namespace

FaceModel FaceModel::build(const TemplateSpec& spec, int uv_rows, int uv_cols) {
  return from_mesh(build_mean_template(spec), uv_rows, uv_cols);
}

FaceModel FaceModel::from_mesh(FaceMesh mean, int uv_rows, int uv_cols) {
  FaceModel model;
  model.mean = std::move(mean);
  model.mapping = compute_uv_mapping(model.mean, uv_rows, uv_cols);
  model.mask = build_weight_mask(model.mapping, model.mean);
  model.uv_edges = build_uv_edge_set(model.mapping);
  return model;
}

void validate(const SynthConfig& cfg) {
  auto range_ok = [](double lo, double hi) {
    return std::isfinite(lo) && std::isfinite(hi) && lo <= hi;
  };
  if (cfg.count < 0 || !range_ok(cfg.yaw_min, cfg.yaw_max) ||
      !range_ok(cfg.pitch_min, cfg.pitch_max) ||
      !range_ok(cfg.roll_min, cfg.roll_max) ||
      !range_ok(cfg.scale_min, cfg.scale_max) || !(cfg.scale_min > 0.0) ||
      !(cfg.translation_jitter >= 0.0) || !(cfg.deformation_magnitude >= 0.0) ||
      cfg.basis_rank < 2 || cfg.image_size < 8) {
    fail(ErrorCode::kInvalidArgument, "invalid synthesis ranges");
  }
  if (cfg.occlude) validate(cfg.occlusion);
}

Eigen::Matrix3Xd smooth_deformation(const FaceModel& model, int rank,
                                    double magnitude, std::uint64_t seed) {
  const int n = model.mean.num_vertices();
  Eigen::Matrix3Xd d = Eigen::Matrix3Xd::Zero(3, n);
  if (magnitude == 0.0) return d;
  if (rank < 2) {
    fail(ErrorCode::kInvalidArgument, "deformation basis rank must be >= 2");
  }
  CounterRng rng(seed, /*stream=*/0xdef0);
  const double hu = std::max(1, model.mapping.height - 1);
  const double hv = std::max(1, model.mapping.width - 1);
  for (int p = 0; p < rank; ++p) {
    for (int q = 0; q < rank; ++q) {
      if (p == 0 && q == 0) continue;  // a constant offset is a translation
      Eigen::Vector3d c;
      for (int axis = 0; axis < 3; ++axis) {
        c(axis) = rng.uniform(-1.0, 1.0) / (1.0 + p + q);
      }
      for (int i = 0; i < n; ++i) {
        const double u = model.mapping.coords(0, i) / hu;
        const double v = model.mapping.coords(1, i) / hv;
        d.col(i) += c * (std::cos(std::numbers::pi * p * u) *
                         std::cos(std::numbers::pi * q * v));
      }
    }
  }
  const double peak = d.colwise().norm().maxCoeff();
  if (peak > 0.0) d *= magnitude / peak;
  return d;
}

std::vector<SynthSample> synth_dataset(const FaceModel& model,
                                       const SynthConfig& cfg) {
  validate(cfg);
  const FaceMesh& mean = model.mean;
  const double diag = bbox_diagonal(mean.vertices);
  const double height =
      mean.vertices.row(1).maxCoeff() - mean.vertices.row(1).minCoeff();
  const double base_scale = 0.7 * cfg.image_size / height;
  const Eigen::Vector3d centroid = mean.vertices.rowwise().mean();
  const int img = cfg.image_size;

  std::vector<SynthSample> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int k = 0; k < cfg.count; ++k) {
    CounterRng rng(cfg.seed, 0x5a3e0000ULL + static_cast<std::uint64_t>(k));
    SynthSample s;
    s.angles.yaw = rng.uniform(cfg.yaw_min, cfg.yaw_max);
    s.angles.pitch = rng.uniform(cfg.pitch_min, cfg.pitch_max);
    s.angles.roll = rng.uniform(cfg.roll_min, cfg.roll_max);
    s.pose.rotation = euler_to_rotation(s.angles);
    s.pose.scale = base_scale * rng.uniform(cfg.scale_min, cfg.scale_max);
    const double jitter = cfg.translation_jitter * img;
    const Eigen::Vector3d center(0.5 * img + rng.uniform(-jitter, jitter),
                                 0.5 * img + rng.uniform(-jitter, jitter), 0.0);
    s.pose.translation = center - s.pose.scale * s.pose.rotation * centroid;

    s.deformation = smooth_deformation(model, cfg.basis_rank,
                                       cfg.deformation_magnitude * diag,
                                       rng.next_u64());
    s.shape = compose_shape(mean, s.deformation);
    s.posed = apply_pose(s.shape, s.pose);

    const FaceMesh image_mesh = to_image_frame(s.posed, img);
    s.face_mask = render_face_binary_mask(project(image_mesh),
                                          image_mesh.facets, img, img);
    if (cfg.occlude) {
      OcclusionSpec spec = cfg.occlusion;
      spec.seed = rng.next_u64();
      OcclusionResult occ = synthesize_occlusion(s.face_mask, spec);
      s.occluder = std::move(occ.occluder);
      s.attention = std::move(occ.gt_attention);
    } else {
      s.occluder = BinaryGrid(img, img, 0);
      s.attention = s.face_mask;
    }
    AttentionMask soft(img, img, 0.0);
    for (std::size_t c = 0; c < soft.size(); ++c) soft[c] = s.attention[c];
    s.vertex_visibility = estimate_visibility(image_mesh, soft);
    s.landmark_visibility.resize(static_cast<Eigen::Index>(mean.landmarks.size()));
    for (std::size_t i = 0; i < mean.landmarks.size(); ++i) {
      s.landmark_visibility(static_cast<Eigen::Index>(i)) =
          s.vertex_visibility(mean.landmarks[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void validate(const FitConfig& cfg) {
  if (!(cfg.step_size > 0.0) || cfg.max_iterations <= 0 ||
      cfg.max_halvings < 0 || !(cfg.tolerance >= 0.0) || !(cfg.eps > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "fit needs a positive step, iteration budget and eps");
  }
  validate(cfg.loss);
}

FitResult fit_sample(const FaceModel& model, const FitTarget& target,
                     const FitConfig& cfg) {
  validate(cfg);
  const int n = model.mean.num_vertices();
  if (target.observed.cols() != n) {
    fail(ErrorCode::kDimensionMismatch,
         "observation has " + std::to_string(target.observed.cols()) +
             " vertices, template has " + std::to_string(n));
  }
  // The fit has no attention prediction to supervise.
  LossConfig loss_cfg = cfg.loss;
  loss_cfg.beta_attention = 0.0;
  const std::vector<Edge> edges = loss_cfg.edge_source == EdgeSource::kFacets
                                      ? facet_edge_set(model.mean.facets)
                                      : model.uv_edges;
  const double cells = static_cast<double>(count_valid(model.mapping));

  const FaceMesh observed_mesh = model.mean.with_vertices(target.observed);
  const UVPositionMap posed_map = encode_uv_map(target.observed, model.mapping);

  FitResult result;
  result.deformation = Eigen::Matrix3Xd::Zero(3, n);
  auto align = [&](const Eigen::Matrix3Xd& d) {
    return self_align_landmarks(
        observed_mesh, model.mean.with_vertices(model.mean.vertices + d),
        target.landmark_visibility, cfg.eps);
  };

  result.pose = align(result.deformation);
  Observation obs = observe(model, posed_map, target.observed, result.pose);
  double step = cfg.step_size;
  double initial_total = -1.0;
  double previous_total = 0.0;
  Evaluation eval;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (it == 0) {
      eval = evaluate(model, edges, loss_cfg, result.deformation, result.pose,
                      obs, /*with_gradient=*/true);
    } else {
      // Re-align against the current shape; a pose that raises the loss is
      // not taken.
      const PoseTransform pose = align(result.deformation);
      Observation next = observe(model, posed_map, target.observed, pose);
      Evaluation trial = evaluate(model, edges, loss_cfg, result.deformation,
                                  pose, next, /*with_gradient=*/true);
      if (trial.report.total <= previous_total) {
        result.pose = pose;
        obs = std::move(next);
        eval = std::move(trial);
      } else {
        eval = evaluate(model, edges, loss_cfg, result.deformation,
                        result.pose, obs, /*with_gradient=*/true);
      }
    }
    const double total = eval.report.total;
    if (initial_total < 0.0) initial_total = total;
    if (!std::isfinite(total) || total > 1e3 * std::max(initial_total, 1e-300)) {
      fail(ErrorCode::kDivergence,
           "loss rose from " + std::to_string(initial_total) + " to " +
               std::to_string(total) + " at iteration " + std::to_string(it));
    }
    if (it > 0 && total > previous_total) result.monotone = false;
    const bool stalled =
        it > 0 && previous_total - total <= cfg.tolerance * previous_total;
    previous_total = total;
    result.trace.push_back(trace_row(it, eval.report));
    result.iterations = it;
    if (total <= kZeroLossPerCell * cells || stalled) {
      result.converged = true;
      break;
    }

    // `step` is the largest vertex displacement of the trial.
    const double gmax = eval.gradient.colwise().norm().maxCoeff();
    if (!(gmax > 0.0)) {
      result.converged = true;
      break;
    }
    // Per-vertex scaling (a positive diagonal preconditioner) so vertices
    // driven only by the edge and normal terms are not starved by the
    // heavily weighted map cells.
    const Eigen::RowVectorXd norms = eval.gradient.colwise().norm();
    Eigen::Matrix3Xd direction = eval.gradient;
    for (Eigen::Index i = 0; i < direction.cols(); ++i) {
      direction.col(i) /= std::max(norms(i), 1e-3 * gmax);
    }
    double trial = std::min(2.0 * step, cfg.step_size);
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      const Eigen::Matrix3Xd candidate = result.deformation - trial * direction;
      const Evaluation probe = evaluate(model, edges, loss_cfg, candidate,
                                        result.pose, obs, /*with_gradient=*/false);
      if (probe.report.total < total) {
        result.deformation = candidate;
        accepted = true;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) {
      // No descent along the (sub)gradient at any tried step.
      result.converged = true;
      break;
    }
    step = trial;
  }
  return result;
}

std::string format_trace(const std::vector<TraceRow>& trace) {
  std::string out = "iter,total,L_P,L_G,L_D,L_E,L_V\n";
  char buf[256];
  for (const TraceRow& r : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.iteration, r.total, r.terms[kTraceP], r.terms[kTraceG],
                  r.terms[kTraceD], r.terms[kTraceE], r.terms[kTraceV]);
    out += buf;
  }
  return out;
}

namespace {

// Central differences of `f` at `x`; returns false when the one-sided
// quotients disagree, i.e. a kink lies within `h` of the point.
template <typename F>
bool finite_difference(F&& f, Eigen::VectorXd x, double h,
                       Eigen::VectorXd* out) {
  const double f0 = f(x);
  out->resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    x(i) = xi + h;
    const double fp = f(x);
    x(i) = xi - h;
    const double fm = f(x);
    x(i) = xi;
    const double forward = (fp - f0) / h;
    const double backward = (f0 - fm) / h;
    if (std::abs(forward - backward) >
        1e-3 * std::max(1.0, std::abs(forward) + std::abs(backward))) {
      return false;
    }
    (*out)(i) = (fp - fm) / (2.0 * h);
  }
  return true;
}

double relative_error(const Eigen::VectorXd& fd, const Eigen::VectorXd& an) {
  const double denom = std::max({fd.norm(), an.norm(), 1e-300});
  return (fd - an).norm() / denom;
}

Eigen::Matrix3Xd random_matrix(CounterRng& rng, Eigen::Index cols,
                               double amplitude) {
  Eigen::Matrix3Xd m(3, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m.data()[k] = rng.uniform(-amplitude, amplitude);
  }
  return m;
}

Eigen::VectorXd as_vector(const Eigen::Matrix3Xd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::Matrix3Xd as_matrix(const Eigen::VectorXd& v) {
  return Eigen::Map<const Eigen::Matrix3Xd>(v.data(), 3, v.size() / 3);
}

PoseTransform random_pose(CounterRng& rng) {
  PoseTransform p;
  EulerAngles a;
  a.yaw = rng.uniform(-80.0, 80.0);
  a.pitch = rng.uniform(-40.0, 40.0);
  a.roll = rng.uniform(-40.0, 40.0);
  p.rotation = euler_to_rotation(a);
  p.scale = rng.uniform(0.5, 2.0);
  p.translation = Eigen::Vector3d(rng.uniform(-5.0, 5.0),
                                  rng.uniform(-5.0, 5.0),
                                  rng.uniform(-5.0, 5.0));
  return p;
}

}  // namespace

std::vector<TermCheck> check_gradients(const GradientCheckConfig& cfg) {
  if (cfg.points <= 0) {
    fail(ErrorCode::kInvalidArgument, "gradient check needs points > 0");
  }
  TemplateSpec spec;
  spec.rows = 12;
  spec.cols = 12;
  const FaceModel model = FaceModel::build(spec, 24, 24);
  const Eigen::Matrix3Xd& mean = model.mean.vertices;
  const Eigen::Index n = mean.cols();
  const double amp = 0.05 * bbox_diagonal(mean);
  const double h = 1e-6 * bbox_diagonal(mean);

  std::vector<TermCheck> report(5);
  report[0].name = "L_G";
  report[1].name = "L_D";
  report[2].name = "L_P";
  report[3].name = "L_E";
  report[4].name = "L_V";

  CounterRng rng(cfg.seed, /*stream=*/0x9c4e);
  constexpr int kMaxRedraws = 50;
  for (std::size_t t = 0; t < report.size(); ++t) {
    TermCheck& check = report[t];
    while (check.points < cfg.points) {
      if (check.skipped > kMaxRedraws * cfg.points) {
        fail(ErrorCode::kDegenerate,
             check.name + ": too many sample points near a kink");
      }
      const Eigen::Matrix3Xd d = random_matrix(rng, n, amp);
      const Eigen::Matrix3Xd d_other = random_matrix(rng, n, amp);
      Eigen::VectorXd x, analytic, fd;
      bool smooth = false;
      switch (t) {
        case 0: {  // geometry, w.r.t. the deformation through pose + encode
          const PoseTransform pose = random_pose(rng);
          const UVPositionMap target = encode_uv_map(
              pose.apply(Eigen::Matrix3Xd(mean + d_other)), model.mapping);
          auto loss = [&](const Eigen::VectorXd& v) {
            return weighted_position_loss(
                       encode_uv_map(pose.apply(Eigen::Matrix3Xd(mean + as_matrix(v))),
                                     model.mapping),
                       target, model.mask)
                .value;
          };
          x = as_vector(d);
          const MapLoss l = weighted_position_loss(
              encode_uv_map(pose.apply(Eigen::Matrix3Xd(mean + d)), model.mapping), target,
              model.mask);
          analytic = as_vector(pose.scale * pose.rotation.transpose() *
                               pull_back_to_vertices(l.gradient, model.mapping));
          smooth = finite_difference(loss, x, h, &fd);
          break;
        }
        case 1: {  // deformation map, w.r.t. the deformation through encode
          const UVPositionMap target = encode_uv_map(d_other, model.mapping);
          auto loss = [&](const Eigen::VectorXd& v) {
            return weighted_position_loss(
                       encode_uv_map(as_matrix(v), model.mapping), target,
                       model.mask)
                .value;
          };
          x = as_vector(d);
          const MapLoss l = weighted_position_loss(
              encode_uv_map(d, model.mapping), target, model.mask);
          analytic =
              as_vector(pull_back_to_vertices(l.gradient, model.mapping));
          smooth = finite_difference(loss, x, h, &fd);
          break;
        }
        case 2: {  // pose-dependent map, w.r.t. its cells
          const PoseTransform pose = random_pose(rng);
          const UVPositionMap p =
              encode_uv_map(pose.apply(Eigen::Matrix3Xd(mean + d)), model.mapping);
          const UVPositionMap target =
              encode_uv_map(pose.apply(Eigen::Matrix3Xd(mean + d_other)), model.mapping);
          std::vector<std::size_t> cells;
          for (std::size_t k = 0; k < p.valid.size(); ++k) {
            if (p.valid[k]) cells.push_back(k);
          }
          x.resize(static_cast<Eigen::Index>(3 * cells.size()));
          for (std::size_t c = 0; c < cells.size(); ++c) {
            x.segment<3>(static_cast<Eigen::Index>(3 * c)) = p.values[cells[c]];
          }
          auto loss = [&](const Eigen::VectorXd& v) {
            UVPositionMap m = p;
            for (std::size_t c = 0; c < cells.size(); ++c) {
              m.values[cells[c]] = v.segment<3>(static_cast<Eigen::Index>(3 * c));
            }
            return weighted_position_loss(m, target, model.mask).value;
          };
          const MapLoss l = weighted_position_loss(p, target, model.mask);
          analytic.resize(x.size());
          for (std::size_t c = 0; c < cells.size(); ++c) {
            analytic.segment<3>(static_cast<Eigen::Index>(3 * c)) =
                l.gradient[cells[c]];
          }
          smooth = finite_difference(loss, x, h, &fd);
          break;
        }
        case 3: {  // edge length, w.r.t. vertices
          const Eigen::Matrix3Xd s = mean + d;
          const Eigen::Matrix3Xd s_hat = mean + d_other;
          auto loss = [&](const Eigen::VectorXd& v) {
            return edge_length_loss(as_matrix(v), s_hat, model.uv_edges).value;
          };
          x = as_vector(s);
          analytic =
              as_vector(edge_length_loss(s, s_hat, model.uv_edges).gradient);
          smooth = finite_difference(loss, x, h, &fd);
          break;
        }
        default: {  // normal consistency, w.r.t. vertices
          const Eigen::Matrix3Xd s = mean + d;
          const Eigen::Matrix3Xd normals =
              facet_normals(mean + d_other, model.mean.facets);
          auto loss = [&](const Eigen::VectorXd& v) {
            return normal_vector_loss(as_matrix(v), normals, model.mean.facets)
                .value;
          };
          x = as_vector(s);
          analytic = as_vector(
              normal_vector_loss(s, normals, model.mean.facets).gradient);
          smooth = finite_difference(loss, x, h, &fd);
          break;
        }
      }
      if (!smooth) {
        ++check.skipped;
        continue;
      }
      check.max_relative_error =
          std::max(check.max_relative_error, relative_error(fd, analytic));
      ++check.points;
    }
  }
  return report;
}

std::string format_gradient_report(const std::vector<TermCheck>& report) {
  std::string out;
  char buf[160];
  for (const TermCheck& c : report) {
    std::snprintf(buf, sizeof(buf), "%s max_rel_err=%.3e points=%d skipped=%d\n",
                  c.name.c_str(), c.max_relative_error, c.points, c.skipped);
    out += buf;
  }
  return out;
}

}  // namespace uvface
