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

#ifndef GROUNDSEG_TOOLS_CLI_HPP_
#define GROUNDSEG_TOOLS_CLI_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace groundseg::tools {

class AnnotationServer;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

struct CliHooks {
  /// Called by `serve` once the socket is bound, before it blocks. Lets a
  /// caller keep a handle to stop the server.
  std::function<void(AnnotationServer&, int port)> on_listening;
};

/// Runs one `groundseg` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

}  // namespace groundseg::tools

#endif  // GROUNDSEG_TOOLS_CLI_HPP_
