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


#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "groundseg_tools/annotation_server.hpp"
#include "groundseg_tools/cli.hpp"

namespace {

groundseg::tools::AnnotationServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  groundseg::tools::CliHooks hooks;
  hooks.on_listening = [](groundseg::tools::AnnotationServer& server, int) {
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
  };
  const int code = groundseg::tools::run_cli(args, std::cout, std::cerr, hooks);
  g_server = nullptr;
  return code;
}
