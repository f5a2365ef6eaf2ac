// Copyright 2026 The qcmap Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcmap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Errors tied to a line of a text input (circuit or device source).
class LineError : public Error {
public:
  LineError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class SyntaxError : public LineError {
public:
  SyntaxError(std::size_t line, const std::string& reason)
      : LineError(line, "syntax error: " + reason), reason_(reason) {}

  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

private:
  std::string reason_;
};

class QubitOutOfRange : public LineError {
public:
  explicit QubitOutOfRange(std::size_t line)
      : LineError(line, "qubit index out of range") {}
};

class ParamArityMismatch : public LineError {
public:
  explicit ParamArityMismatch(std::size_t line)
      : LineError(line, "wrong number of gate parameters") {}
};

class MissingQubitsDecl : public Error {
public:
  MissingQubitsDecl() : Error("missing 'qubits <N>' declaration") {}
};

/// Programmatic construction of an ill-formed gate or circuit.
class InvalidGate : public Error {
public:
  using Error::Error;
};

class NotSchedulable : public Error {
public:
  explicit NotSchedulable(std::size_t node)
      : Error("gate #" + std::to_string(node) + " is not in the frontier") {}
};

class DisconnectedGraph : public Error {
public:
  DisconnectedGraph() : Error("coupling graph is not connected") {}
};

class UnknownGateKind : public LineError {
public:
  UnknownGateKind(std::size_t line, const std::string& name)
      : LineError(line, "unknown gate kind '" + name + "'") {}
};

class MissingDuration : public Error {
public:
  explicit MissingDuration(const std::string& kind)
      : Error("native gate '" + kind + "' has no duration") {}
};

class IndexOutOfRange : public Error {
public:
  IndexOutOfRange(int index, int size)
      : Error("physical qubit " + std::to_string(index) + " out of range (device has " +
              std::to_string(size) + " qubits)") {}
};

class NotCoupled : public Error {
public:
  NotCoupled(int a, int b)
      : Error("physical qubits " + std::to_string(a) + " and " + std::to_string(b) +
              " are not coupled") {}
};

class NoRuleAvailable : public Error {
public:
  NoRuleAvailable(const std::string& kind, const std::string& device)
      : Error("no rewrite rule expresses '" + kind + "' on device '" + device + "'") {}
};

class TooManyQubits : public Error {
public:
  TooManyQubits(int requested, int limit)
      : Error("too many qubits: " + std::to_string(requested) + " > " + std::to_string(limit)) {}
};

class ExactLimitExceeded : public Error {
public:
  using Error::Error;
};

class ConstraintViolation : public Error {
public:
  using Error::Error;
};

class MeasureHasNoUnitary : public Error {
public:
  MeasureHasNoUnitary() : Error("measure has no unitary") {}
};

} // namespace qcmap
