// Copyright 2026 The jmprob Authors
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

#ifndef JMPROB_TOOLS_CLI_HPP_
#define JMPROB_TOOLS_CLI_HPP_

#include <iosfwd>

namespace jmprob::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitCompatible = 0;
inline constexpr int kExitIncompatible = 1;
inline constexpr int kExitError = 2;

/// Entry point of the `jmprob` command; returns the process exit code.
/// Output that is not redirected with --out goes to `out`, diagnostics to
/// `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace jmprob::cli

#endif  // JMPROB_TOOLS_CLI_HPP_
