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

#ifndef UVFACE_TOOLS_CLI_H_
#define UVFACE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace uvface::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEmpty = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitIo = 4;

// Runs the `uvface` command line. `args` excludes the program name.
// Diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Expands `--config PATH` (or `--config=PATH`) into `--key=value` arguments
// placed ahead of the remaining flags, so explicit flags win. Lines are
// `key = value`; blank lines and `#` comments are skipped.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace uvface::cli

#endif  // UVFACE_TOOLS_CLI_H_
