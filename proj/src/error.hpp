// Copyright 2026 The UltraOT Authors
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

#ifndef ULTRAOT_ERROR_HPP
#define ULTRAOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uot {

enum class ErrorCode {
  kInvalidArgument,   // bad parameter value (q <= 1, p < 1, ...)
  kStructure,         // malformed matrix/tree/measure (asymmetry, bad sums, ...)
  kUltrametric,       // ultrametric inequality violated
  kSupportMismatch,   // measure labels do not match the space
  kFrostman,          // scaling precondition on the measure violated
  kCapExceeded,       // instance larger than the configured solver cap
  kIo,                // file read/write or parse failure
  kInternal,          // invariant breach inside an algorithm
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace uot

#endif  // ULTRAOT_ERROR_HPP
