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

#ifndef UVFACE_ERRORS_H_
#define UVFACE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace uvface {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kDomain,
  kDegenerate,
  kResolutionTooCoarse,
  kIo,
  kParse,
  kDivergence,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this exception; the code lets
// front ends map a failure onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace uvface

#endif  // UVFACE_ERRORS_H_
