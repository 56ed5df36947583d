// Copyright 2026 The satriage Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace satriage {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (corpus lines, model files, registries).
class SchemaError : public Error {
public:
  using Error::Error;
};

/// Lexical or syntax error in a C source snippet.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string &message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Training could not proceed (degenerate labels, divergence).
class TrainingError : public Error {
public:
  using Error::Error;
};

/// A lookup by id or CWE that found nothing.
class NotFoundError : public Error {
public:
  using Error::Error;
};

} // namespace satriage
