// Copyright 2026 The groundseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "groundseg_tools/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "groundseg/auto_labeler.hpp"
#include "groundseg/error.hpp"
#include "groundseg/evaluation.hpp"
#include "groundseg/labels.hpp"
#include "groundseg/network.hpp"
#include "groundseg/synthetic_world.hpp"
#include "groundseg_tools/annotation_server.hpp"
#include "groundseg_tools/dataset.hpp"
#include "groundseg_tools/manifest.hpp"

namespace groundseg::tools {
namespace {

namespace fs = std::filesystem;

constexpr const char* kScoreExtension = ".scores";

struct Common {
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  BinLayout layout = BinLayout::kXYZI;
  EncoderConfig encoder;
};

void add_layout_option(CLI::App* cmd, Common& c) {
  const std::map<std::string, BinLayout> layouts{{"xyzi", BinLayout::kXYZI}, {"xyzir", BinLayout::kXYZIR}};
  cmd->add_option("--layout", c.layout, "Bin record layout")->transform(CLI::CheckedTransformer(layouts));
}

void add_encoder_options(CLI::App* cmd, Common& c) {
  add_layout_option(cmd, c);
  cmd->add_option("--bin-width", c.encoder.bin_width_deg, "Azimuth bin width in degrees")->capture_default_str();
  cmd->add_option("--rings", c.encoder.num_rings, "Number of laser rings")->capture_default_str();
  cmd->add_option("--height-norm", c.encoder.height_norm, "Height normalization constant")->capture_default_str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

// Runs `fn` on every frame. Failures are reported per frame, in id order.
// Returns the number of failed frames.
std::size_t for_each_frame(const std::map<std::string, fs::path>& frames, std::size_t jobs, std::ostream& err,
                           const std::function<void(const std::string&, const fs::path&)>& fn) {
  std::vector<std::pair<std::string, fs::path>> list(frames.begin(), frames.end());
  std::vector<std::string> errors(list.size());
  parallel_for(list.size(), jobs, [&](std::size_t i) {
    try {
      fn(list[i].first, list[i].second);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::size_t failed = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (errors[i].empty()) continue;
    err << "error: " << list[i].second.string() << ": " << errors[i] << '\n';
    ++failed;
  }
  return failed;
}

void write_scores(const std::vector<double>& scores, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  char buf[32];
  for (double s : scores) {
    const int n = std::snprintf(buf, sizeof(buf), "%.17g\n", s);
    out.write(buf, n);
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

std::vector<double> read_scores(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::vector<double> scores;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      scores.push_back(std::stod(line, &used));
      if (used != line.size()) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kFormat, path.string() + ": bad score line '" + line + "'");
    }
  }
  return scores;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  fs::path output;
  std::size_t frames = 10;
  std::uint64_t first_seed = 0;
  double tilted_fraction = SyntheticWorldConfig{}.tilted_fraction;
};

int cmd_synth(const SynthArgs& a, const Common& c, std::ostream& out) {
  SyntheticWorldConfig world;
  world.num_rings = c.encoder.num_rings;
  world.tilted_fraction = a.tilted_fraction;
  ensure_dir(a.output / "velodyne");
  ensure_dir(a.output / "labels");
  parallel_for(a.frames, c.jobs, [&](std::size_t i) {
    char id[16];
    std::snprintf(id, sizeof(id), "%06zu", i);
    const auto frame = generate_synthetic_frame(world, a.first_seed + i);
    save_kitti_bin(frame.cloud, a.output / "velodyne" / (std::string(id) + ".bin"), c.layout);
    auto truth = frame.truth;
    truth.frame_id = id;
    save_labels(truth, a.output / "labels" / (std::string(id) + ".gsl"));
  });
  out << "wrote " << a.frames << " frames to " << a.output.string() << '\n';
  return kExitOk;
}

struct IoArgs {
  fs::path input;
  fs::path output;
};

int cmd_encode(const IoArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  c.encoder.validate();
  const auto frames = list_frames(a.input, ".bin");
  if (frames.empty()) {
    err << "warning: 0 frames in " << a.input.string() << '\n';
    return kExitOk;
  }
  ensure_dir(a.output);
  const auto failed = for_each_frame(frames, c.jobs, err, [&](const std::string& id, const fs::path& path) {
    const auto encoded = encode_frame(load_cloud(path, c.layout, c.encoder.num_rings), c.encoder);
    save_frame(encoded.frame, a.output / (id + ".gsf"));
  });
  out << "encoded " << frames.size() - failed << " of " << frames.size() << " frames\n";
  return failed == 0 ? kExitOk : kExitInput;
}

int cmd_autolabel(const IoArgs& a, const AutoLabelConfig& cfg, const Common& c, std::ostream& out,
                  std::ostream& err) {
  cfg.validate();
  const auto frames = list_frames(a.input, ".bin");
  if (frames.empty()) {
    err << "warning: 0 frames in " << a.input.string() << '\n';
    return kExitOk;
  }
  ensure_dir(a.output);
  const auto failed = for_each_frame(frames, c.jobs, err, [&](const std::string& id, const fs::path& path) {
    auto labels = auto_label(load_cloud(path, c.layout, c.encoder.num_rings), cfg);
    labels.frame_id = id;
    save_labels(labels, a.output / (id + ".gsl"));
  });
  out << "labeled " << frames.size() - failed << " of " << frames.size() << " frames\n";
  return failed == 0 ? kExitOk : kExitInput;
}

struct SplitArgs {
  fs::path input;
  fs::path output;
  double ratio = 0.7;
};

int cmd_split(const SplitArgs& a, const Common& c, std::ostream& out) {
  std::vector<std::string> ids;
  for (const auto& [id, path] : list_frames(a.input, ".bin")) ids.push_back(id);
  const auto manifest = make_manifest(a.input, ids, c.seed, a.ratio);
  save_manifest(manifest, a.output);
  out << "split " << ids.size() << " frames: " << manifest.frames(Split::kTrain).size() << " train, "
      << manifest.frames(Split::kEval).size() << " eval\n";
  return kExitOk;
}

struct TrainArgs {
  fs::path manifest;
  fs::path labels;
  fs::path output;
  std::string topology = "L05_DECONV";
  std::optional<fs::path> pretrain;
  std::size_t log_every = 10;
  TrainConfig train;
};

int cmd_train(TrainArgs a, const Common& c, std::ostream& out, std::ostream& err) {
  c.encoder.validate();
  const auto topology = parse_topology(a.topology);
  if (!topology) throw Error(ErrorKind::kConfig, "unknown topology " + a.topology);
  a.train.rng_seed = c.seed;
  a.train.validate();

  const auto manifest = load_manifest(a.manifest);
  const auto ids = manifest.frames(Split::kTrain);
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (!fs::is_regular_file(a.labels / (id + ".gsl"))) missing.push_back(id);
  }
  if (!missing.empty()) {
    err << "error: missing labels for " << missing.size() << " frame(s):";
    for (const auto& id : missing) err << ' ' << id;
    err << '\n';
    return kExitInput;
  }

  std::optional<NetworkSpec> init;
  if (a.pretrain) init = load_model(*a.pretrain, *topology);

  std::vector<TrainingSample> samples(ids.size());
  parallel_for(ids.size(), c.jobs, [&](std::size_t i) {
    const auto cloud = load_cloud(manifest.root / (ids[i] + ".bin"), c.layout, c.encoder.num_rings);
    const auto labels = load_labels(a.labels / (ids[i] + ".gsl"));
    if (labels.size() != cloud.size()) {
      throw Error(ErrorKind::kCorruption, ids[i] + ": " + std::to_string(labels.size()) + " labels for " +
                                              std::to_string(cloud.size()) + " points");
    }
    const auto encoded = encode_frame(cloud, c.encoder);
    samples[i] = make_training_sample(normalize(encoded.frame, c.encoder), labels_to_grid(labels, encoded.grid));
  });

  const auto net = build_topology(*topology, c.seed);
  char line[96];
  const auto result = train(net, samples, a.train, init ? &*init : nullptr, [&](std::size_t it, double loss) {
    if (a.log_every == 0 || (it + 1) % a.log_every != 0) return;
    std::snprintf(line, sizeof(line), "iteration %zu loss %.6f\n", it + 1, loss);
    out << line << std::flush;
  });
  save_model(result.net, a.output);
  if (!result.loss_history.empty()) {
    std::snprintf(line, sizeof(line), "final loss %.6f\n", result.loss_history.back());
    out << line;
  }
  out << "wrote " << a.output.string() << '\n';
  return kExitOk;
}

struct InferArgs {
  fs::path model;
  fs::path input;
  fs::path output;
  double threshold = 0.5;
  bool scores = false;
};

int cmd_infer(const InferArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  c.encoder.validate();
  const auto net = load_model(a.model);
  const auto frames = list_frames(a.input, ".bin");
  if (frames.empty()) {
    err << "warning: 0 frames in " << a.input.string() << '\n';
    return kExitOk;
  }
  ensure_dir(a.output);
  const auto failed = for_each_frame(frames, c.jobs, err, [&](const std::string& id, const fs::path& path) {
    const auto cloud = load_cloud(path, c.layout, c.encoder.num_rings);
    const auto encoded = encode_frame(cloud, c.encoder);
    const auto probs = forward(net, normalize(encoded.frame, c.encoder));
    const auto p_ground = grid_to_point_probs(probs, encoded.grid, cloud);
    PointLabels labels(cloud.size(), Label::kNonGround, id);
    for (std::size_t i = 0; i < p_ground.size(); ++i) {
      if (p_ground[i] >= a.threshold) labels.labels[i] = Label::kGround;
    }
    save_labels(labels, a.output / (id + ".gsl"));
    if (a.scores) write_scores(p_ground, a.output / (id + kScoreExtension));
  });
  out << "inferred " << frames.size() - failed << " of " << frames.size() << " frames\n";
  return failed == 0 ? kExitOk : kExitInput;
}

struct EvalArgs {
  fs::path pred;
  fs::path gt;
  std::optional<fs::path> clouds;
  std::optional<fs::path> manifest;
  std::string max_range = "60";
  std::optional<fs::path> curve;
  std::optional<fs::path> report;
  double target_recall = 0.992;
  double target_precision = 0.924;
};

std::optional<double> parse_range(const std::string& text) {
  if (text == "none" || text == "unlimited") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kConfig, "--max-range must be a positive number or 'none', got " + text);
}

int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto max_range = parse_range(a.max_range);
  if (max_range && !a.clouds) throw Error(ErrorKind::kConfig, "--max-range needs --clouds for point ranges");

  auto gt = list_frames(a.gt, ".gsl");
  auto pred_scores = list_frames(a.pred, kScoreExtension);
  auto pred_labels = list_frames(a.pred, ".gsl");
  std::set<std::string> pred_ids;
  for (const auto& [id, p] : pred_scores) pred_ids.insert(id);
  for (const auto& [id, p] : pred_labels) pred_ids.insert(id);

  if (a.manifest) {
    const auto ids = load_manifest(*a.manifest).frames(Split::kEval);
    const std::set<std::string> wanted(ids.begin(), ids.end());
    std::erase_if(gt, [&](const auto& kv) { return !wanted.contains(kv.first); });
    std::erase_if(pred_ids, [&](const auto& id) { return !wanted.contains(id); });
  }
  std::vector<std::string> only_gt, only_pred;
  for (const auto& [id, p] : gt) {
    if (!pred_ids.contains(id)) only_gt.push_back(id);
  }
  for (const auto& id : pred_ids) {
    if (!gt.contains(id)) only_pred.push_back(id);
  }
  if (gt.empty() || !only_gt.empty() || !only_pred.empty()) {
    err << "error: prediction and ground-truth frame sets differ";
    if (gt.empty()) err << " (no ground-truth frames)";
    for (const auto& id : only_gt) err << "\n  no prediction for " << id;
    for (const auto& id : only_pred) err << "\n  no ground truth for " << id;
    err << '\n';
    return kExitInput;
  }

  std::map<std::string, fs::path> clouds;
  if (max_range) clouds = list_frames(*a.clouds, ".bin");

  std::vector<std::pair<std::string, fs::path>> frames(gt.begin(), gt.end());
  std::vector<ScoreCounts> counts(frames.size());
  parallel_for(frames.size(), c.jobs, [&](std::size_t i) {
    const auto& id = frames[i].first;
    const auto truth = load_labels(frames[i].second);
    std::vector<double> scores;
    if (pred_scores.contains(id)) {
      scores = read_scores(pred_scores.at(id));
    } else {
      for (Label l : load_labels(pred_labels.at(id)).labels) scores.push_back(l == Label::kGround ? 1.0 : 0.0);
    }
    if (scores.size() != truth.size()) {
      throw Error(ErrorKind::kCorruption, id + ": " + std::to_string(scores.size()) + " predictions for " +
                                              std::to_string(truth.size()) + " labels");
    }
    std::vector<std::uint8_t> mask(truth.size(), 1);
    if (max_range) {
      if (!clouds.contains(id)) throw Error(ErrorKind::kIo, "no cloud for frame " + id);
      const auto cloud = load_kitti_bin(clouds.at(id), c.layout);
      if (cloud.size() != truth.size()) throw Error(ErrorKind::kCorruption, id + ": cloud and labels differ in size");
      mask = range_mask(cloud, max_range);
    }
    for (std::size_t p = 0; p < truth.size(); ++p) {
      if (truth.labels[p] == Label::kUnlabeled) mask[p] = 0;
    }
    counts[i].add(scores, truth.binarized(), mask);
  });
  ScoreCounts total;
  for (const auto& part : counts) total.merge(part);

  const auto curve = pr_curve(total);
  const auto report = evaluate(curve, a.target_recall, a.target_precision);
  write_report(out, report);
  if (a.report) {
    std::ofstream file(*a.report, std::ios::binary);
    write_report(file, report);
    if (!file) throw Error(ErrorKind::kIo, "cannot write " + a.report->string());
  }
  if (a.curve) {
    std::ofstream file(*a.curve, std::ios::binary);
    write_curve_csv(file, curve);
    if (!file) throw Error(ErrorKind::kIo, "cannot write " + a.curve->string());
  }
  return kExitOk;
}

struct ServeArgs {
  fs::path data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
};

int cmd_serve(const ServeArgs& a, const Common& c, std::ostream& out, const CliHooks& hooks) {
  ServerConfig cfg;
  cfg.data_dir = a.data_dir;
  cfg.layout = c.layout;
  cfg.encoder = c.encoder;
  cfg.host = a.host;
  cfg.port = a.port;
  AnnotationServer server(cfg);
  const int port = server.bind();
  out << "serving " << server.frame_count() << " frames on http://" << a.host << ':' << port << '\n'
      << "port " << port << std::endl;
  if (hooks.on_listening) hooks.on_listening(server, port);
  server.run();
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDivergence:
    case ErrorKind::kState:
      return kExitInternal;
    default:
      return kExitInput;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks) {
  CLI::App app{"groundseg: LiDAR ground segmentation toolkit", "groundseg"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  Common common;
  app.add_option("--jobs,-j", common.jobs, "Worker threads for per-frame work")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Seed for splits, initialization and shuffling")->capture_default_str();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate labeled synthetic frames");
  synth_cmd->fallthrough();
  synth_cmd->add_option("--output,-o", synth.output, "Dataset directory")->required();
  synth_cmd->add_option("--frames,-n", synth.frames, "Number of frames")->capture_default_str();
  synth_cmd->add_option("--first-seed", synth.first_seed, "World seed of frame 0")->capture_default_str();
  synth_cmd->add_option("--tilted-fraction", synth.tilted_fraction, "Share of tilted ground planes")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  add_encoder_options(synth_cmd, common);

  IoArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Encode KITTI bins into dense frames (.gsf)");
  encode_cmd->fallthrough();
  encode_cmd->add_option("--input,-i", encode.input, "Bin file or directory")->required();
  encode_cmd->add_option("--output,-o", encode.output, "Output directory")->required();
  add_encoder_options(encode_cmd, common);

  IoArgs autolabel;
  AutoLabelConfig autolabel_cfg;
  auto* autolabel_cmd = app.add_subcommand("autolabel", "Rough ground labels for pretraining (.gsl)");
  autolabel_cmd->fallthrough();
  autolabel_cmd->add_option("--input,-i", autolabel.input, "Bin file or directory")->required();
  autolabel_cmd->add_option("--output,-o", autolabel.output, "Output directory")->required();
  autolabel_cmd->add_option("--cell-size", autolabel_cfg.cell_size)->capture_default_str();
  autolabel_cmd->add_option("--max-height-mean", autolabel_cfg.max_height_mean)->capture_default_str();
  autolabel_cmd->add_option("--max-height-spread", autolabel_cfg.max_height_spread)->capture_default_str();
  autolabel_cmd->add_option("--max-height-stddev", autolabel_cfg.max_height_stddev)->capture_default_str();
  add_encoder_options(autolabel_cmd, common);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Write a seeded train/eval manifest");
  split_cmd->fallthrough();
  split_cmd->add_option("--input,-i", split.input, "Directory of bins")->required();
  split_cmd->add_option("--output,-o", split.output, "Manifest path")->required();
  split_cmd->add_option("--ratio", split.ratio, "Training share")->capture_default_str()->check(CLI::Range(0.0, 1.0));

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a network on the TRAIN split of a manifest");
  train_cmd->fallthrough();
  train_cmd->add_option("--manifest,-m", train_args.manifest, "Manifest from `groundseg split`")->required();
  train_cmd->add_option("--labels,-l", train_args.labels, "Directory of .gsl labels")->required();
  train_cmd->add_option("--output,-o", train_args.output, "Model path (.gsm)")->required();
  train_cmd->add_option("--topology,-t", train_args.topology)->capture_default_str();
  train_cmd->add_option("--pretrain", train_args.pretrain, "Initial weights (.gsm)");
  train_cmd->add_option("--iterations", train_args.train.iterations)->capture_default_str();
  train_cmd->add_option("--lr", train_args.train.learning_rate)->capture_default_str();
  train_cmd->add_option("--momentum", train_args.train.momentum)->capture_default_str();
  train_cmd->add_option("--batch-size", train_args.train.batch_size)->capture_default_str();
  train_cmd->add_option("--lr-decay", train_args.train.lr_decay)->capture_default_str();
  train_cmd->add_option("--lr-decay-every", train_args.train.lr_decay_every, "0 decays once at the midpoint")
      ->capture_default_str();
  train_cmd->add_option("--log-every", train_args.log_every, "Print the loss every N iterations")
      ->capture_default_str();
  add_encoder_options(train_cmd, common);

  InferArgs infer;
  auto* infer_cmd = app.add_subcommand("infer", "Label frames with a trained model");
  infer_cmd->fallthrough();
  infer_cmd->add_option("--model,-m", infer.model)->required();
  infer_cmd->add_option("--input,-i", infer.input, "Bin file or directory")->required();
  infer_cmd->add_option("--output,-o", infer.output, "Output directory")->required();
  infer_cmd->add_option("--threshold", infer.threshold, "Ground when p >= threshold")->capture_default_str();
  infer_cmd->add_flag("--scores", infer.scores, "Also write per-point probabilities (.scores)");
  add_encoder_options(infer_cmd, common);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Precision/recall evaluation of per-point predictions");
  eval_cmd->fallthrough();
  eval_cmd->add_option("--pred,-p", eval.pred, "Directory of .scores or .gsl predictions")->required();
  eval_cmd->add_option("--gt,-g", eval.gt, "Directory of ground-truth .gsl")->required();
  eval_cmd->add_option("--clouds,-c", eval.clouds, "Directory of bins, for the range limit");
  eval_cmd->add_option("--manifest", eval.manifest, "Restrict to the EVAL split of this manifest");
  eval_cmd->add_option("--max-range", eval.max_range, "Meters, or 'none'")->capture_default_str();
  eval_cmd->add_option("--curve", eval.curve, "Write threshold,precision,recall CSV");
  eval_cmd->add_option("--report", eval.report, "Also write the report to this file");
  eval_cmd->add_option("--target-recall", eval.target_recall)->capture_default_str();
  eval_cmd->add_option("--target-precision", eval.target_precision)->capture_default_str();
  add_layout_option(eval_cmd, common);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the annotation HTTP server");
  serve_cmd->fallthrough();
  serve_cmd->add_option("--data-dir,-d", serve.data_dir)->required();
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "0 picks a free port")->capture_default_str()->check(CLI::Range(0, 65535));
  add_encoder_options(serve_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth, common, out);
    if (*encode_cmd) return cmd_encode(encode, common, out, err);
    if (*autolabel_cmd) return cmd_autolabel(autolabel, autolabel_cfg, common, out, err);
    if (*split_cmd) return cmd_split(split, common, out);
    if (*train_cmd) return cmd_train(train_args, common, out, err);
    if (*infer_cmd) return cmd_infer(infer, common, out, err);
    if (*eval_cmd) return cmd_eval(eval, common, out, err);
    if (*serve_cmd) return cmd_serve(serve, common, out, hooks);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace groundseg::tools
