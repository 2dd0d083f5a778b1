// Copyright 2026 The motionsim Authors. All Rights Reserved.
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

#ifndef MOTIONSIM_ERROR_HPP_
#define MOTIONSIM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace motionsim {

// Base of every error raised by the library. Anything deriving from Error is
// a data or parameter problem (CLI exit code 2); programming errors use
// assertions instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OrderingError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometryError : public Error {
 public:
  DegenerateGeometryError(const std::string& what, long rank = -1)
      : Error(rank < 0 ? what
                       : what + " (rank " + std::to_string(rank) + ")"),
        rank_(rank) {}
  long rank() const { return rank_; }

 private:
  long rank_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class JoinError : public Error {
 public:
  using Error::Error;
};

class DegenerateScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace motionsim

#endif  // MOTIONSIM_ERROR_HPP_
