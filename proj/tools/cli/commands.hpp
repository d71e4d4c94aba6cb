// Copyright 2026 The qest Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs `qest <args...>` (args excludes the program name). Data goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Replaces every `--config FILE` pair by the flags stored in FILE, a JSON
/// object mapping flag names to values. Arrays become comma lists and `true`
/// becomes a bare flag. Explicit flags that follow still win.
std::vector<std::string> expand_config(const std::vector<std::string> &args);

}  // namespace qest::cli
