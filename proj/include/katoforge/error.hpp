/**************************************************************************
 * Copyright 2026 The katoforge Authors
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
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace katoforge {

/// Base of every error the library raises. kind() is the stable name used
/// by the CLI in JSON error records.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define KATOFORGE_ERROR(Name)                                        \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

KATOFORGE_ERROR(NonPrime);
KATOFORGE_ERROR(ResourceLimit);
KATOFORGE_ERROR(DivisionByZero);
KATOFORGE_ERROR(ConfigMismatch);
KATOFORGE_ERROR(ZeroPolynomial);
KATOFORGE_ERROR(NotDivisible);
KATOFORGE_ERROR(PrecisionExhausted);
KATOFORGE_ERROR(IntegralityViolation);
KATOFORGE_ERROR(DegreeOverflow);
KATOFORGE_ERROR(DlogOfZero);
KATOFORGE_ERROR(NotClosed);
KATOFORGE_ERROR(DegreeMismatch);
KATOFORGE_ERROR(NormShapeUnsupported);
KATOFORGE_ERROR(UnsupportedField);
KATOFORGE_ERROR(UnsupportedDegree);
KATOFORGE_ERROR(WildClass);
KATOFORGE_ERROR(LevelDecrease);
KATOFORGE_ERROR(UnknownName);
KATOFORGE_ERROR(VerifyMismatch);
KATOFORGE_ERROR(IoError);
KATOFORGE_ERROR(TypeError);

#undef KATOFORGE_ERROR

/// Parse failure with 1-based position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  const char* kind() const noexcept override { return "SyntaxError"; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace katoforge
