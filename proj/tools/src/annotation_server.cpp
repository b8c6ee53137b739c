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

#include "groundseg_tools/annotation_server.hpp"

#include <httplib.h>

#include <cstring>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include <json.hpp>

#include "groundseg/error.hpp"
#include "groundseg/flood.hpp"
#include "groundseg/labels.hpp"
#include "groundseg/network.hpp"
#include "groundseg_tools/dataset.hpp"

namespace groundseg::tools {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Session {
  std::string id;
  PointCloud cloud;
  std::optional<EncodedFrame> encoded;  // raw heights; absent for empty clouds
  fs::path label_path;

  mutable std::shared_mutex mutex;  // guards the fields below
  PointLabels labels;
  std::uint64_t revision = 0;
  bool dirty = false;
};

// Thrown inside handlers and turned into a JSON error response.
struct HttpError {
  int status;
  std::string message;
};

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, status, json{{"error", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return body;
  } catch (const json::parse_error& e) {
    throw HttpError{400, std::string("invalid JSON: ") + e.what()};
  }
}

std::uint64_t expect_revision(const json& body, const Session& s) {
  if (!body.contains("revision") || !body["revision"].is_number_unsigned()) {
    throw HttpError{400, "missing revision"};
  }
  const auto revision = body["revision"].get<std::uint64_t>();
  if (revision != s.revision) {
    throw HttpError{409, "revision " + std::to_string(revision) + " is stale; current is " + std::to_string(s.revision)};
  }
  return revision;
}

std::size_t non_negative_index(const json& v, const char* what) {
  if (!v.is_number_unsigned()) throw HttpError{400, std::string(what) + " must be a non-negative integer"};
  return v.get<std::size_t>();
}

std::vector<SeedPoint> parse_seeds(const json& body) {
  if (!body.contains("seeds") || !body["seeds"].is_array()) throw HttpError{400, "seeds must be an array"};
  std::vector<SeedPoint> seeds;
  for (const auto& s : body["seeds"]) {
    if (s.is_array() && s.size() == 2) {
      seeds.push_back({non_negative_index(s[0], "ring"), non_negative_index(s[1], "column")});
    } else if (s.is_object() && s.contains("ring") && s.contains("column")) {
      seeds.push_back({non_negative_index(s["ring"], "ring"), non_negative_index(s["column"], "column")});
    } else {
      throw HttpError{400, "each seed is [ring, column] or {ring, column}"};
    }
  }
  return seeds;
}

Label parse_value(const json& v) {
  std::optional<Label> label;
  if (v.is_string()) label = parse_label(v.get<std::string>());
  if (v.is_number_unsigned()) label = parse_label(std::to_string(v.get<unsigned>()));
  if (!label) throw HttpError{400, "value must be ground, non_ground or unlabeled"};
  return *label;
}

// Swaps in `next` and reports which points changed. Caller holds the lock.
json commit(Session& s, PointLabels next) {
  json changed = json::array();
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next.labels[i] != s.labels.labels[i]) changed.push_back(i);
  }
  if (!changed.empty()) s.dirty = true;
  s.labels.labels = std::move(next.labels);
  ++s.revision;
  return json{{"changed_point_indices", std::move(changed)}, {"new_revision", s.revision}};
}

}  // namespace

struct AnnotationServer::Impl {
  ServerConfig cfg;
  std::map<std::string, std::unique_ptr<Session>> sessions;
  httplib::Server http;
  int bound_port = -1;

  explicit Impl(ServerConfig c) : cfg(std::move(c)) {
    std::error_code ec;
    if (!fs::is_directory(cfg.data_dir, ec)) throw Error(ErrorKind::kIo, "data directory not found: " + cfg.data_dir.string());
    cfg.encoder.validate();
    const fs::path bins = fs::is_directory(cfg.data_dir / "velodyne") ? cfg.data_dir / "velodyne" : cfg.data_dir;
    for (const auto& [id, path] : list_frames(bins, ".bin")) {
      auto s = std::make_unique<Session>();
      s->id = id;
      s->cloud = load_cloud(path, cfg.layout, cfg.encoder.num_rings);
      if (!s->cloud.empty()) s->encoded = encode_frame(s->cloud, cfg.encoder);
      s->label_path = cfg.data_dir / "labels" / (id + ".gsl");
      if (fs::exists(s->label_path)) {
        s->labels = load_labels(s->label_path);
        if (s->labels.size() != s->cloud.size()) {
          throw Error(ErrorKind::kCorruption, s->label_path.string() + " has " + std::to_string(s->labels.size()) +
                                                  " labels for " + std::to_string(s->cloud.size()) + " points");
        }
      } else {
        s->labels = PointLabels(s->cloud.size(), Label::kUnlabeled, id);
      }
      sessions.emplace(id, std::move(s));
    }
    routes();
  }

  Session& session(const httplib::Request& req) {
    const auto it = sessions.find(req.matches[1].str());
    if (it == sessions.end()) throw HttpError{404, "unknown frame " + req.matches[1].str()};
    return *it->second;
  }

  // Wraps a handler so HttpError and library errors become responses.
  template <typename F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const HttpError& e) {
        reply_error(res, e.status, e.message);
      } catch (const json::exception& e) {
        reply_error(res, 400, std::string("bad request: ") + e.what());
      } catch (const std::exception& e) {
        reply_error(res, 500, e.what());
      }
    };
  }

  void routes() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.Get("/frames", guarded([this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& [id, s] : sessions) {
        std::shared_lock lock(s->mutex);
        list.push_back({{"frame_id", id}, {"point_count", s->cloud.size()}, {"labeled_fraction", s->labels.labeled_fraction()}});
      }
      reply_json(res, 200, list);
    }));

    http.Get(R"(/frames/([^/]+)/cloud)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Session& s = session(req);
      const auto points = serialize_xyzir(s.cloud);
      std::string body;
      body.reserve(16 + points.size() + s.cloud.size());
      auto put_u32 = [&body](std::uint32_t v) {
        for (int k = 0; k < 4; ++k) body.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
      };
      body.append("GSC1");
      put_u32(static_cast<std::uint32_t>(s.cloud.size()));
      {
        std::shared_lock lock(s.mutex);
        put_u32(static_cast<std::uint32_t>(s.revision));
        put_u32(0);
        body.append(reinterpret_cast<const char*>(points.data()), points.size());
        for (Label l : s.labels.labels) body.push_back(static_cast<char>(static_cast<std::uint8_t>(l)));
      }
      res.status = 200;
      res.set_content(std::move(body), "application/octet-stream");
    }));

    http.Post(R"(/frames/([^/]+)/flood)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Session& s = session(req);
      const json body = parse_body(req);
      FloodConfig flood;
      if (body.contains("t1")) flood.t1 = body["t1"].get<double>();
      if (body.contains("t2")) flood.t2 = body["t2"].get<double>();
      const auto seeds = parse_seeds(body);
      std::unique_lock lock(s.mutex);
      expect_revision(body, s);
      if (!s.encoded) throw HttpError{422, "frame has no points to flood"};
      PointLabels next;
      try {
        flood.validate();
        next = apply_seeds(s.encoded->grid, s.encoded->frame, seeds, flood, s.labels);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kInvalidSeed) throw HttpError{422, e.what()};
        throw HttpError{400, e.what()};
      }
      reply_json(res, 200, commit(s, std::move(next)));
    }));

    http.Post(R"(/frames/([^/]+)/toggle)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Session& s = session(req);
      const json body = parse_body(req);
      if (!body.contains("indices") || !body["indices"].is_array()) throw HttpError{400, "indices must be an array"};
      std::vector<std::size_t> indices;
      for (const auto& v : body["indices"]) indices.push_back(non_negative_index(v, "index"));
      if (!body.contains("value")) throw HttpError{400, "missing value"};
      const Label value = parse_value(body["value"]);
      std::unique_lock lock(s.mutex);
      expect_revision(body, s);
      PointLabels next;
      try {
        next = toggle_points(s.labels, indices, value);
      } catch (const Error& e) {
        throw HttpError{400, e.what()};
      }
      reply_json(res, 200, commit(s, std::move(next)));
    }));

    http.Put(R"(/frames/([^/]+)/labels)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Session& s = session(req);
      std::unique_lock lock(s.mutex);
      try {
        fs::create_directories(s.label_path.parent_path());
        save_labels(s.labels, s.label_path);
      } catch (const std::exception& e) {
        throw HttpError{500, std::string("save failed: ") + e.what()};
      }
      s.dirty = false;
      reply_json(res, 200, json{{"frame_id", s.id}, {"revision", s.revision}, {"path", s.label_path.string()}});
    }));

    http.Get(R"(/frames/([^/]+)/prediction)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Session& s = session(req);
      if (!req.has_param("model")) throw HttpError{400, "missing model parameter"};
      fs::path model_path = req.get_param_value("model");
      if (model_path.is_relative()) model_path = cfg.data_dir / model_path;
      std::error_code ec;
      if (!fs::is_regular_file(model_path, ec)) throw HttpError{404, "model not found: " + model_path.string()};
      if (!s.encoded) throw HttpError{422, "frame has no points"};
      std::vector<double> scores;
      try {
        const auto net = load_model(model_path);
        const auto probs = forward(net, normalize(s.encoded->frame, cfg.encoder));
        scores = grid_to_point_probs(probs, s.encoded->grid, s.cloud);
      } catch (const Error& e) {
        throw HttpError{422, e.what()};
      }
      reply_json(res, 200, json{{"frame_id", s.id}, {"model", model_path.string()}, {"p_ground", scores}});
    }));
  }
};

AnnotationServer::AnnotationServer(ServerConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::bind() {
  if (impl_->cfg.port == 0) {
    impl_->bound_port = impl_->http.bind_to_any_port(impl_->cfg.host);
  } else if (impl_->http.bind_to_port(impl_->cfg.host, impl_->cfg.port)) {
    impl_->bound_port = impl_->cfg.port;
  }
  if (impl_->bound_port <= 0) {
    throw Error(ErrorKind::kIo, "cannot bind " + impl_->cfg.host + ":" + std::to_string(impl_->cfg.port));
  }
  return impl_->bound_port;
}

void AnnotationServer::run() { impl_->http.listen_after_bind(); }

void AnnotationServer::stop() {
  if (impl_) impl_->http.stop();
}

bool AnnotationServer::is_running() const { return impl_->http.is_running(); }

std::size_t AnnotationServer::frame_count() const { return impl_->sessions.size(); }

}  // namespace groundseg::tools
