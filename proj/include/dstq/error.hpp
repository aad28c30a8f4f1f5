// Copyright 2026 The dstq Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dstq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two mass functions (or a mass and a frame) disagree on the frame of
/// discernment.
class FrameMismatch : public Error {
 public:
  using Error::Error;
};

/// A belief vector violates its invariants.
class InvalidMass : public Error {
 public:
  using Error::Error;
};

/// The pignistic transform is undefined because all mass sits on the empty
/// set.
class TotalConflict : public Error {
 public:
  explicit TotalConflict(double empty_mass)
      : Error("total conflict: m(empty) = " + std::to_string(empty_mass)),
        empty_mass_(empty_mass) {}

  double empty_mass() const { return empty_mass_; }

 private:
  double empty_mass_;
};

/// Rule text could not be parsed. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A rule references a variable that has no mass bound to it.
class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound rule variable '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A computation exceeds a configured size cap (enumeration or simulation).
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace dstq
