/*
 * Copyright 2026 The vidlabel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VIDLABEL_CLI_CLI_H_
#define VIDLABEL_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace vidlabel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Parses argv, runs one subcommand and returns the process exit code. The
// JSON summary line goes to `out`, logs and errors to `err`.
int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int Dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vidlabel::cli

#endif  // VIDLABEL_CLI_CLI_H_
