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

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uvface/errors.h"
#include "uvface/eval.h"
#include "uvface/fit.h"
#include "uvface/io.h"
#include "uvface/pose.h"
#include "uvface/self_align.h"
#include "uvface/template.h"
#include "uvface/uv_map.h"

namespace uvface::cli {
namespace {

namespace fs = std::filesystem;

// Signals "nothing to do" from inside a command.
struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TemplateArgs {
  int rows = 64;
  int cols = 64;
  int resolution = 256;
};

void add_template_args(CLI::App* cmd, TemplateArgs* t, bool with_resolution) {
  cmd->add_option("--template-rows", t->rows, "Template lattice rows")
      ->capture_default_str();
  cmd->add_option("--template-cols", t->cols, "Template lattice columns")
      ->capture_default_str();
  if (with_resolution) {
    cmd->add_option("--resolution", t->resolution, "UV map size (square)")
        ->capture_default_str();
  }
}

FaceMesh make_template(const TemplateArgs& t) {
  TemplateSpec spec;
  spec.rows = t.rows;
  spec.cols = t.cols;
  return build_mean_template(spec);
}

void add_config_option(CLI::App* cmd) {
  // Consumed by expand_config before parsing; listed here for --help.
  cmd->add_option("--config", "Flat key=value file; flags override it");
}

void check_vertex_count(const FaceMesh& mesh, const FaceMesh& templ,
                        const std::string& what) {
  if (mesh.num_vertices() != templ.num_vertices()) {
    fail(ErrorCode::kDimensionMismatch,
         what + " has " + std::to_string(mesh.num_vertices()) +
             " vertices, the template has " +
             std::to_string(templ.num_vertices()));
  }
}

std::vector<EulerAngles> read_angles(const std::string& path) {
  const std::vector<double> v = io::parse_values(io::read_file(path));
  if (v.size() % 3 != 0) {
    fail(ErrorCode::kParse, path + ": expected yaw pitch roll triples");
  }
  std::vector<EulerAngles> out(v.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].yaw = v[3 * i];
    out[i].pitch = v[3 * i + 1];
    out[i].roll = v[3 * i + 2];
  }
  return out;
}

// ---------------------------------------------------------------- template

struct TemplateCmd {
  TemplateArgs t;
  std::string out;
  std::string landmarks_out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rows", t.rows, "Lattice rows")->capture_default_str();
    cmd->add_option("--cols", t.cols, "Lattice columns")->capture_default_str();
    cmd->add_option("--out", out, "Output OBJ")->required();
    cmd->add_option("--landmarks-out", landmarks_out,
                    "Output landmark index file (1-based)");
    add_config_option(cmd);
  }

  int run(std::ostream&) const {
    const FaceMesh mesh = make_template(t);
    const std::string obj = io::format_obj(mesh);
    const std::string lm = io::format_landmarks(mesh.landmarks);
    io::write_file_atomic(out, obj);
    if (!landmarks_out.empty()) io::write_file_atomic(landmarks_out, lm);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------- uv

struct UvEncodeCmd {
  TemplateArgs t;
  std::string mesh;
  std::string out;

  void attach(CLI::App* cmd) {
    add_template_args(cmd, &t, true);
    cmd->add_option("--mesh", mesh, "Input OBJ registered to the template")
        ->required();
    cmd->add_option("--out", out, "Output position map (.uvpm)")->required();
    add_config_option(cmd);
  }

  int run(std::ostream&) const {
    const FaceMesh templ = make_template(t);
    const FaceMesh input = io::parse_obj(io::read_file(mesh));
    if (input.num_vertices() == 0) throw EmptyInput(mesh + ": no vertices");
    check_vertex_count(input, templ, mesh);
    const UVMapping mapping = compute_uv_mapping(templ, t.resolution, t.resolution);
    io::write_file_atomic(
        out, io::encode_uvpm(encode_uv_map(input.vertices, mapping)));
    return kExitOk;
  }
};

struct UvDecodeCmd {
  TemplateArgs t;
  std::string map;
  std::string out;

  void attach(CLI::App* cmd) {
    add_template_args(cmd, &t, true);
    cmd->add_option("--map", map, "Input position map (.uvpm)")->required();
    cmd->add_option("--out", out, "Output OBJ")->required();
    add_config_option(cmd);
  }

  int run(std::ostream&) const {
    const FaceMesh templ = make_template(t);
    const UVPositionMap m = io::decode_uvpm(io::read_file(map));
    const UVMapping mapping = compute_uv_mapping(templ, t.resolution, t.resolution);
    const FaceMesh mesh = templ.with_vertices(decode_uv_map(m, mapping));
    io::write_file_atomic(out, io::format_obj(mesh));
    return kExitOk;
  }
};

// ------------------------------------------------------------------- align

struct AlignCmd {
  std::string source;
  std::string target;
  std::string vis;
  std::string landmarks;
  std::string out;
  double eps = kDefaultVisibilityEps;
  std::string scale = "unweighted";

  void attach(CLI::App* cmd) {
    cmd->add_option("--source", source, "Shape S in the model frame (OBJ)")
        ->required();
    cmd->add_option("--target", target, "Observed face P (OBJ)")->required();
    cmd->add_option("--vis", vis,
                    "Visibility per landmark or per vertex (default all 1)");
    cmd->add_option("--landmarks", landmarks,
                    "Landmark indices, 1-based (default every vertex)");
    cmd->add_option("--eps", eps, "Weight floor added to visibility")
        ->capture_default_str();
    cmd->add_option("--scale-estimator", scale, "unweighted or weighted")
        ->check(CLI::IsMember({"unweighted", "weighted"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "Output pose file")->required();
    add_config_option(cmd);
  }

  int run(std::ostream&) const {
    FaceMesh s = io::parse_obj(io::read_file(source));
    FaceMesh p = io::parse_obj(io::read_file(target));
    if (s.num_vertices() == 0 || p.num_vertices() == 0) {
      throw EmptyInput("align: a mesh has no vertices");
    }
    if (s.num_vertices() != p.num_vertices()) {
      fail(ErrorCode::kDimensionMismatch,
           "source and target differ in vertex count");
    }
    std::vector<int> lm;
    if (!landmarks.empty()) {
      lm = io::parse_landmarks(io::read_file(landmarks));
      if (lm.empty()) throw EmptyInput(landmarks + ": no landmarks");
      for (int i : lm) {
        if (i < 0 || i >= s.num_vertices()) {
          fail(ErrorCode::kParse, landmarks + ": index out of range");
        }
      }
    } else {
      lm.resize(static_cast<std::size_t>(s.num_vertices()));
      for (std::size_t i = 0; i < lm.size(); ++i) lm[i] = static_cast<int>(i);
    }
    s.landmarks = lm;
    p.landmarks = lm;

    const auto k = static_cast<Eigen::Index>(lm.size());
    Eigen::VectorXd lv = Eigen::VectorXd::Ones(k);
    if (!vis.empty()) {
      const std::vector<double> v = io::parse_values(io::read_file(vis));
      const Eigen::Map<const Eigen::VectorXd> values(
          v.data(), static_cast<Eigen::Index>(v.size()));
      if (values.size() == k) {
        lv = values;
      } else if (values.size() == s.num_vertices()) {
        for (Eigen::Index i = 0; i < k; ++i) lv(i) = values(lm[i]);
      } else {
        fail(ErrorCode::kParse,
             vis + ": expected one value per landmark or per vertex");
      }
    }
    SimilarityOptions opts;
    opts.scale = scale == "weighted" ? ScaleEstimator::kWeightedSums
                                     : ScaleEstimator::kUnweightedSums;
    const PoseTransform pose = self_align_landmarks(p, s, lv, eps, opts);
    io::write_file_atomic(out, format_pose(pose));
    return kExitOk;
  }
};

// -------------------------------------------------------------------- eval

struct EvalCmd {
  std::string pred;
  std::string gt;
  std::string normalizer = "bbox";
  std::string pred_pose;
  std::string gt_pose;
  bool gimbal_fix = false;
  std::uint64_t seed = 0;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pred", pred, "Predicted point blocks");
    cmd->add_option("--gt", gt, "Ground-truth point blocks");
    cmd->add_option("--normalizer", normalizer, "bbox or interocular")
        ->check(CLI::IsMember({"bbox", "interocular"}))
        ->capture_default_str();
    cmd->add_option("--pred-pose", pred_pose, "Predicted yaw pitch roll lines");
    cmd->add_option("--gt-pose", gt_pose, "Ground-truth yaw pitch roll lines");
    cmd->add_flag("--gimbal-fix", gimbal_fix,
                  "Drop samples whose pitch/roll error is a decomposition flip");
    cmd->add_option("--seed", seed, "Seed for the balanced yaw subsample")
        ->capture_default_str();
    cmd->add_option("--out", out, "Also write the report here");
    add_config_option(cmd);
  }

  int run(std::ostream& os) const {
    if ((pred.empty()) != (gt.empty())) {
      fail(ErrorCode::kInvalidArgument, "--pred and --gt go together");
    }
    if ((pred_pose.empty()) != (gt_pose.empty())) {
      fail(ErrorCode::kInvalidArgument, "--pred-pose and --gt-pose go together");
    }
    if (pred.empty() && pred_pose.empty()) {
      throw EmptyInput("eval: nothing to evaluate");
    }
    std::ostringstream report;
    char buf[256];

    std::vector<EulerAngles> pa, ga;
    std::vector<PoseError> errors;
    std::vector<std::size_t> keep;
    if (!pred_pose.empty()) {
      pa = read_angles(pred_pose);
      ga = read_angles(gt_pose);
      if (pa.empty() || ga.empty()) throw EmptyInput("eval: empty pose file");
      errors = pose_errors(pa, ga);
      if (gimbal_fix) {
        const GimbalFilterResult f = gimbal_fix_filter(errors);
        keep = f.retained;
        std::snprintf(buf, sizeof(buf), "gimbal_dropped all %zu %zu\n",
                      f.dropped.size(), errors.size());
        report << buf;
      } else {
        keep.resize(errors.size());
        for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
      }
      std::vector<PoseError> kept;
      for (std::size_t i : keep) kept.push_back(errors[i]);
      if (kept.empty()) throw EmptyInput("eval: every sample was filtered");
      const PoseMae mae = mae_from_errors(kept);
      const std::pair<const char*, double> rows[] = {
          {"mae_yaw", mae.yaw},
          {"mae_pitch", mae.pitch},
          {"mae_roll", mae.roll},
          {"mae_mean", mae.mean}};
      for (const auto& [name, value] : rows) {
        std::snprintf(buf, sizeof(buf), "%s all %.17g %zu\n", name, value,
                      mae.count);
        report << buf;
      }
    }

    if (!pred.empty()) {
      const std::vector<Eigen::MatrixXd> p = io::parse_point_blocks(io::read_file(pred));
      const std::vector<Eigen::MatrixXd> g = io::parse_point_blocks(io::read_file(gt));
      if (p.empty() || g.empty()) throw EmptyInput("eval: no point blocks");
      if (p.size() != g.size()) {
        fail(ErrorCode::kDimensionMismatch,
             "prediction and ground truth hold different sample counts");
      }
      std::vector<double> nme(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (normalizer == "bbox") {
          nme[i] = nme_bbox(p[i], g[i]);
        } else {
          if (p[i].rows() != 3 || g[i].rows() != 3) {
            fail(ErrorCode::kParse, "interocular NME needs 3D points");
          }
          nme[i] = nme_interocular(p[i], g[i], kLeftOuterEyeLandmark,
                                   kRightOuterEyeLandmark);
        }
      }
      if (!ga.empty()) {
        if (ga.size() != nme.size()) {
          fail(ErrorCode::kDimensionMismatch,
               "pose and point files hold different sample counts");
        }
        if (!gimbal_fix) {
          keep.resize(nme.size());
          for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
        }
        std::vector<BinnedSample> samples;
        for (std::size_t i : keep) samples.push_back({nme[i], ga[i].yaw});
        const YawBinnedReport r = yaw_binned_report(samples, seed);
        report << format_binned_report("nme_" + normalizer, r);
        if (!r.notice.empty()) report << "# " << r.notice << "\n";
      } else {
        double sum = 0.0;
        for (double v : nme) sum += v;
        std::snprintf(buf, sizeof(buf), "nme_%s all %.17g %zu\n",
                      normalizer.c_str(), sum / static_cast<double>(nme.size()),
                      nme.size());
        report << buf;
      }
    }
    const std::string text = report.str();
    if (!out.empty()) io::write_file_atomic(out, text);
    os << text;
    return kExitOk;
  }
};

// ------------------------------------------------------------------- synth

std::string sample_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sample_%04d", k);
  return buf;
}

struct SynthCmd {
  TemplateArgs t;
  SynthConfig cfg;
  bool no_occlude = false;
  std::string out;

  void attach(CLI::App* cmd) {
    add_template_args(cmd, &t, true);
    cmd->add_option("--seed", cfg.seed, "Dataset seed")->capture_default_str();
    cmd->add_option("--count", cfg.count, "Number of samples")
        ->capture_default_str();
    cmd->add_option("--yaw-min", cfg.yaw_min)->capture_default_str();
    cmd->add_option("--yaw-max", cfg.yaw_max)->capture_default_str();
    cmd->add_option("--pitch-min", cfg.pitch_min)->capture_default_str();
    cmd->add_option("--pitch-max", cfg.pitch_max)->capture_default_str();
    cmd->add_option("--roll-min", cfg.roll_min)->capture_default_str();
    cmd->add_option("--roll-max", cfg.roll_max)->capture_default_str();
    cmd->add_option("--magnitude", cfg.deformation_magnitude,
                    "Largest displacement, fraction of the bbox diagonal")
        ->capture_default_str();
    cmd->add_option("--rank", cfg.basis_rank, "Cosine frequencies per UV axis")
        ->capture_default_str();
    cmd->add_option("--image-size", cfg.image_size)->capture_default_str();
    cmd->add_flag("--no-occlude", no_occlude, "Skip synthetic occluders");
    cmd->add_option("--out", out, "Output directory")->required();
    add_config_option(cmd);
  }

  int run(std::ostream& os) {
    if (cfg.count == 0) throw EmptyInput("synth: --count is 0");
    cfg.occlude = !no_occlude;
    const FaceModel model =
        FaceModel::from_mesh(make_template(t), t.resolution, t.resolution);
    const std::vector<SynthSample> samples = synth_dataset(model, cfg);

    const std::string lm = io::format_landmarks(model.mean.landmarks);
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const SynthSample& s = samples[k];
      const fs::path dir = fs::path(out) / sample_name(static_cast<int>(k));
      fs::create_directories(dir);
      std::vector<double> lv(s.landmark_visibility.data(),
                             s.landmark_visibility.data() +
                                 s.landmark_visibility.size());
      std::vector<double> vv(s.vertex_visibility.data(),
                             s.vertex_visibility.data() +
                                 s.vertex_visibility.size());
      io::write_file_atomic(dir / "observed.obj", io::format_obj(s.posed));
      io::write_file_atomic(dir / "landmarks.txt", lm);
      io::write_file_atomic(dir / "visibility.txt", io::format_values(lv));
      io::write_file_atomic(dir / "vertex_visibility.txt", io::format_values(vv));
      io::write_file_atomic(dir / "face_mask.pgm", io::encode_pgm(s.face_mask));
      io::write_file_atomic(dir / "occluder.pgm", io::encode_pgm(s.occluder));
      io::write_file_atomic(dir / "attention.pgm", io::encode_pgm(s.attention));
      io::write_file_atomic(dir / "pose_gt.txt", format_pose(s.pose));
      io::write_file_atomic(
          dir / "angles_gt.txt",
          io::format_values({s.angles.yaw, s.angles.pitch, s.angles.roll}));
      io::write_file_atomic(dir / "shape_gt.obj", io::format_obj(s.shape));
    }
    os << "wrote " << samples.size() << " samples to " << out << "\n";
    return kExitOk;
  }
};

// --------------------------------------------------------------------- fit

struct FitCmd {
  TemplateArgs t;
  FitConfig cfg;
  std::string edges = "uv";
  std::string sample;
  std::string out;

  void attach(CLI::App* cmd) {
    add_template_args(cmd, &t, true);
    cmd->add_option("--sample", sample,
                    "Sample directory (observed.obj, visibility.txt)")
        ->required();
    cmd->add_option("--out", out, "Output directory")->required();
    cmd->add_option("--step-size", cfg.step_size)->capture_default_str();
    cmd->add_option("--max-iterations", cfg.max_iterations)->capture_default_str();
    cmd->add_option("--tolerance", cfg.tolerance,
                    "Stop when the relative decrease falls below this")
        ->capture_default_str();
    cmd->add_option("--max-halvings", cfg.max_halvings)->capture_default_str();
    cmd->add_option("--eps", cfg.eps)->capture_default_str();
    cmd->add_option("--beta-geometry", cfg.loss.beta_geometry)->capture_default_str();
    cmd->add_option("--beta-deformation", cfg.loss.beta_deformation)
        ->capture_default_str();
    cmd->add_option("--beta-pose", cfg.loss.beta_pose_dependent)
        ->capture_default_str();
    cmd->add_option("--beta-edge", cfg.loss.beta_edge)->capture_default_str();
    cmd->add_option("--beta-normal", cfg.loss.beta_normal)->capture_default_str();
    cmd->add_option("--edges", edges, "Edge set for the length term: uv or facets")
        ->check(CLI::IsMember({"uv", "facets"}))
        ->capture_default_str();
    add_config_option(cmd);
  }

  int run(std::ostream& os) {
    cfg.loss.edge_source =
        edges == "facets" ? EdgeSource::kFacets : EdgeSource::kUvGrid;
    const fs::path dir(sample);
    const FaceMesh observed = io::parse_obj(io::read_file(dir / "observed.obj"));
    if (observed.num_vertices() == 0) throw EmptyInput("fit: empty observation");
    const std::vector<double> v =
        io::parse_values(io::read_file(dir / "visibility.txt"));

    const FaceModel model =
        FaceModel::from_mesh(make_template(t), t.resolution, t.resolution);
    check_vertex_count(observed, model.mean, (dir / "observed.obj").string());
    if (v.size() != model.mean.landmarks.size()) {
      fail(ErrorCode::kParse, "visibility.txt: expected " +
                                  std::to_string(model.mean.landmarks.size()) +
                                  " values");
    }
    FitTarget target;
    target.observed = observed.vertices;
    target.landmark_visibility = Eigen::Map<const Eigen::VectorXd>(
        v.data(), static_cast<Eigen::Index>(v.size()));
    const FitResult r = fit_sample(model, target, cfg);

    const FaceMesh shape = compose_shape(model.mean, r.deformation);
    const FaceMesh fitted = reconstruct_final(shape, r.pose);
    fs::create_directories(out);
    io::write_file_atomic(fs::path(out) / "fitted.obj", io::format_obj(fitted));
    io::write_file_atomic(fs::path(out) / "shape.obj", io::format_obj(shape));
    io::write_file_atomic(fs::path(out) / "pose.txt", format_pose(r.pose));
    io::write_file_atomic(fs::path(out) / "trace.csv", format_trace(r.trace));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "iterations %d converged %d monotone %d total %.9g\n",
                  r.iterations + 1, r.converged ? 1 : 0, r.monotone ? 1 : 0,
                  r.trace.empty() ? 0.0 : r.trace.back().total);
    os << buf;
    return kExitOk;
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerate:
    case ErrorCode::kDivergence:
    case ErrorCode::kDomain:
    case ErrorCode::kResolutionTooCoarse:
      return kExitDegenerate;
    default:
      return kExitIo;
  }
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> injected;
  std::optional<std::size_t> insert_at;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        fail(ErrorCode::kParse, "--config needs a file");
      }
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    if (!insert_at) insert_at = rest.size();
    std::istringstream in(io::read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        fail(ErrorCode::kParse,
             path + ":" + std::to_string(lineno) + ": expected key = value");
      }
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        fail(ErrorCode::kParse, path + ":" + std::to_string(lineno) + ": empty key");
      }
      injected.push_back("--" + key + "=" + value);
    }
  }
  if (!insert_at) return rest;
  // Config values go right after the subcommand words so flags that follow
  // take precedence.
  std::size_t at = 0;
  while (at < rest.size() && rest[at].rfind("-", 0) != 0) ++at;
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(),
              injected.end());
  return rest;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"uvface: UV position maps, self-alignment and fitting for "
               "registered face meshes"};
  app.name("uvface");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  TemplateCmd template_cmd;
  UvEncodeCmd encode_cmd;
  UvDecodeCmd decode_cmd;
  AlignCmd align_cmd;
  EvalCmd eval_cmd;
  SynthCmd synth_cmd;
  FitCmd fit_cmd;

  template_cmd.attach(app.add_subcommand("template", "Write the mean template mesh"));
  CLI::App* uv = app.add_subcommand("uv", "Position map encode/decode");
  uv->require_subcommand(1);
  CLI::App* encode = uv->add_subcommand("encode", "Mesh to position map");
  CLI::App* decode = uv->add_subcommand("decode", "Position map to mesh");
  encode_cmd.attach(encode);
  decode_cmd.attach(decode);
  CLI::App* align = app.add_subcommand("align", "Visibility-weighted similarity");
  align_cmd.attach(align);
  CLI::App* eval = app.add_subcommand("eval", "NME and pose error reports");
  eval_cmd.attach(eval);
  CLI::App* synth = app.add_subcommand("synth", "Synthetic posed, occluded faces");
  synth_cmd.attach(synth);
  CLI::App* fit = app.add_subcommand("fit", "Recover deformation and pose");
  fit_cmd.attach(fit);
  CLI::App* templ = app.get_subcommand("template");

  try {
    std::vector<std::string> argv = expand_config(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (templ->parsed()) return template_cmd.run(out);
    if (encode->parsed()) return encode_cmd.run(out);
    if (decode->parsed()) return decode_cmd.run(out);
    if (align->parsed()) return align_cmd.run(out);
    if (eval->parsed()) return eval_cmd.run(out);
    if (synth->parsed()) return synth_cmd.run(out);
    if (fit->parsed()) return fit_cmd.run(out);
  } catch (const EmptyInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}

}  // namespace uvface::cli
