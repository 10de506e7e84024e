/*
 * Copyright 2026 The deacp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace deacp {

enum class ErrorKind {
  Declaration,       // undeclared or misdeclared name
  EnumerationLimit,  // |carrier|^|vars| above the configured bound
  ExplorationLimit,  // LTS state bound exceeded
  MalformedCondition,
  Syntax,
  Guardedness,
  Shape,             // operation needs a linear term / linear spec
  Scope,             // outside the fragment an operation supports
  CfarInapplicable,
  Usage,
};

const char* to_string(ErrorKind kind);

/// Every failure inside the library surfaces as an Error carrying its kind;
/// the C API maps kinds onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse-time failures carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message,
              ErrorKind kind = ErrorKind::Syntax)
      : Error(kind, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace deacp
