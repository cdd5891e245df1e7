// Copyright 2026 The maxlin Authors
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

#ifndef MAXLIN_ERROR_HPP_
#define MAXLIN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace maxlin {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: dimension mismatch, out-of-range value, malformed model.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A problem file or report did not match its schema. `path` is a JSON
// pointer to the offending field.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(std::string path, const std::string& what)
      : InvalidArgument(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// An enumeration or table would exceed its configured size limit.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace maxlin

#endif  // MAXLIN_ERROR_HPP_
