// Copyright 2026 The temperlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEMPERLAB_CLI_APP_HPP
#define TEMPERLAB_CLI_APP_HPP

#include <ostream>

namespace temperlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIncomplete = 1;  // a point failed, or a check failed under --strict
inline constexpr int kExitUsage = 2;       // bad flags or config

/// Entry point of the `temperlab` executable. Reports go to --out or `out`;
/// diagnostics and config errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace temperlab::cli

#endif  // TEMPERLAB_CLI_APP_HPP
