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

// HTTP service for interactive ground annotation.
//
// The data directory holds KITTI bins (either directly or under
// `velodyne/`); labels are read from and saved to `labels/<id>.gsl`, and
// prediction models are looked up relative to the data directory.
//
//   GET  /frames                       [{frame_id, point_count, labeled_fraction}]
//   GET  /frames/{id}/cloud            "GSC1", u32 count, u32 revision, u32 0,
//                                      count x 20-byte XYZIR, count label bytes
//   POST /frames/{id}/flood            {seeds, t1, t2, revision}
//   POST /frames/{id}/toggle           {indices, value, revision}
//   PUT  /frames/{id}/labels           write labels/<id>.gsl
//   GET  /frames/{id}/prediction?model=<path>
//
// Mutations answer {changed_point_indices, new_revision}. A request whose
// revision is not the frame's current one gets 409 and changes nothing.

#ifndef GROUNDSEG_TOOLS_ANNOTATION_SERVER_HPP_
#define GROUNDSEG_TOOLS_ANNOTATION_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "groundseg/cloud_io.hpp"
#include "groundseg/encoder.hpp"

namespace groundseg::tools {

struct ServerConfig {
  std::filesystem::path data_dir;
  BinLayout layout = BinLayout::kXYZI;
  EncoderConfig encoder;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
};

class AnnotationServer {
 public:
  /// Loads every frame under the data directory. Throws kIo when the
  /// directory does not exist.
  explicit AnnotationServer(ServerConfig cfg);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  /// Binds the listening socket and returns the actual port.
  int bind();
  /// Serves until stop() is called. bind() must have succeeded.
  void run();
  void stop();
  bool is_running() const;

  std::size_t frame_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace groundseg::tools

#endif  // GROUNDSEG_TOOLS_ANNOTATION_SERVER_HPP_
