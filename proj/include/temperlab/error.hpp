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

#ifndef TEMPERLAB_ERROR_HPP
#define TEMPERLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace temperlab {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kStateSpaceTooLarge,
  kUnsupportedKind,
  kDivisibility,
  kNoTrace,
  kWindow,
  kInconsistentChain,
  kNotConverged,
  kDegenerate,
  kConfig,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; `code()` is stable and
// serialized by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace temperlab

#endif  // TEMPERLAB_ERROR_HPP
