// Copyright 2026 The advgame Authors
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

#ifndef ADVGAME_ERRORS_H_
#define ADVGAME_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace advgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called on a game of the wrong shape (e.g. a 2x2-only routine).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar argument lies outside its admissible interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The 2x2 closed forms require acc_1 > acc_2 > rob_2 > rob_1.
class OrderingError : public Error {
 public:
  using Error::Error;
};

// Query that is undefined for the no-attack action.
class NoAttackError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Exponential solvers refuse inputs above their size limit.
class GuardError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace advgame

#endif  // ADVGAME_ERRORS_H_
