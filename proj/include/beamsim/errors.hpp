// SPDX-License-Identifier: Apache-2.0
//
// beamsim - link-level simulator comparing codebook-based and
// vision-aided beam management for mmWave/THz downlinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace beamsim {

/// Base class for every error thrown by the library; the CLI catches this
/// to turn failures into a diagnostic plus a nonzero exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
  public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation
/// (direction cosine beyond [-1, 1], non-positive distance, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class EmptyCodebook : public Error {
  public:
    using Error::Error;
};

/// No codeword points inside the selected SSB sector.
class EmptyCandidateSet : public Error {
  public:
    using Error::Error;
};

class OutOfSector : public Error {
  public:
    using Error::Error;
};

class EmptyInput : public Error {
  public:
    using Error::Error;
};

/// Malformed config file or detections record; the message carries the
/// origin (path or stream name) and line number.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Structurally valid input violating a documented invariant; the message
/// names the invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace beamsim
