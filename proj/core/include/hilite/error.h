// Copyright 2026 The Authors.
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

#ifndef HILITE_ERROR_H_
#define HILITE_ERROR_H_

#include <stdexcept>
#include <string>

namespace hilite {

// Base of every error the library throws. Callers that only need to tell
// "bad data" from "bug" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or string (bad JSON, missing field, bad brackets).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A parse tree whose leaves do not line up with the sentence tokens.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// The scoring service could not be reached or answered with non-2xx.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration, e.g. a feature dimension that changed mid-run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failure, training divergence and similar numerical trouble.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hilite

#endif  // HILITE_ERROR_H_
