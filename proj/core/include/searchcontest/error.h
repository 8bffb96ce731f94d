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

#ifndef SEARCHCONTEST_ERROR_H_
#define SEARCHCONTEST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace searchcontest {

enum class ErrorKind {
  kInvalidParameter,
  kDegenerateTruncation,
  kNotViable,
  kNoSearchIncentive,
  kNoneExists,
  kNumericFailure,
  kDivergentObjective,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind so
// front ends can map it onto exit codes.
class ContestError : public std::runtime_error {
 public:
  ContestError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
      return "invalid-parameter";
    case ErrorKind::kDegenerateTruncation:
      return "degenerate-truncation";
    case ErrorKind::kNotViable:
      return "not-viable";
    case ErrorKind::kNoSearchIncentive:
      return "no-search-incentive";
    case ErrorKind::kNoneExists:
      return "none-exists";
    case ErrorKind::kNumericFailure:
      return "numeric-failure";
    case ErrorKind::kDivergentObjective:
      return "divergent-objective";
  }
  return "unknown";
}

}  // namespace searchcontest

#endif  // SEARCHCONTEST_ERROR_H_
