//
// Copyright 2026 The nlunoise Authors
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

#ifndef NLUNOISE_ERRORS_H_
#define NLUNOISE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlunoise {

// Malformed or inconsistent input data. `line()` is 1-based, 0 when the
// error has no line position.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) +
                                           ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A required resource (file, lexicon, provider) is missing or unreadable.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlunoise

#endif  // NLUNOISE_ERRORS_H_
