// Copyright 2026 The searchcontest Authors
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

#ifndef SEARCHCONTEST_TOOLS_CLI_H_
#define SEARCHCONTEST_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace searchcontest::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNoSolution = 2;  // not viable / no equilibrium exists
inline constexpr int kVerifyFailed = 3;
inline constexpr int kNumericFailure = 4;

// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace searchcontest::cli

#endif  // SEARCHCONTEST_TOOLS_CLI_H_
