//
// Copyright 2026 The TEM Authors
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
//

#ifndef TEM_TOOLS_CLI_H_
#define TEM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace tem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

// Runs the `tem` command line. `args` excludes the program name. Returns the
// process exit code: 0 on success, 1 when a verification check fails, and 2
// for usage, configuration, I/O, and data errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tem::cli

#endif  // TEM_TOOLS_CLI_H_
