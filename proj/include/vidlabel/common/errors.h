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

#ifndef VIDLABEL_COMMON_ERRORS_H_
#define VIDLABEL_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vidlabel {

// Base of every error raised by the library. The CLI maps UsageError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid counts, out-of-range indices, unknown keys in run files.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

// Malformed bytes in an input file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// Well-formed input that violates a record or checkpoint invariant.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

// Bad arguments to a library function (shape mismatch, empty input).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error("argument error: " + what) {}
};

// NaN or infinity where finite values are required.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error("numeric error: " + what) {}
};

// API misuse, e.g. backward without a forward cache; also bad CLI usage.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage error: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

}  // namespace vidlabel

#endif  // VIDLABEL_COMMON_ERRORS_H_
