// Copyright 2026 The resonance Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every module. The CLI maps each family onto
 * a fixed exit code.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested Hilbert-space dimension exceeds the configured cap.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Input violates a structural contract (Hermiticity, normalization, shape).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Index or parameter outside its admissible range.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Numerical procedure could not deliver (step cap, failed fit).
class NumericError : public Error {
  public:
    using Error::Error;
};

/// A refinement round found no peak inside its window.
class RefinementError : public NumericError {
  public:
    using NumericError::NumericError;
};

class HeraldError : public Error {
  public:
    using Error::Error;
};

/// Target transition has a vanishing matrix element.
class DarkTransitionError : public HeraldError {
  public:
    using HeraldError::HeraldError;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace resonance
