/* Copyright 2026 The phonkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonkit {

// Base of every data-level failure raised by the library. The CLI maps any
// Error to exit code 2; anything else that escapes is treated as internal.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  // 1-based line number, 0 when not applicable.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicatePhoneme : public Error {
 public:
  using Error::Error;
};

class MissingSpecialToken : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  NormalizationError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit NormalizationError(const std::string& what)
      : Error(what), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SegmentationError : public Error {
 public:
  SegmentationError(std::size_t byte_offset, std::string grapheme)
      : Error("cannot segment '" + grapheme + "' at byte offset " +
              std::to_string(byte_offset)),
        byte_offset_(byte_offset),
        grapheme_(std::move(grapheme)) {}

  std::size_t byte_offset() const { return byte_offset_; }
  const std::string& grapheme() const { return grapheme_; }

 private:
  std::size_t byte_offset_;
  std::string grapheme_;
};

class TransliterationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidLogits : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class UndecomposablePhoneme : public Error {
 public:
  UndecomposablePhoneme(std::string surface, std::string failing_suffix)
      : Error("cannot decompose '" + surface + "': no component covers '" +
              failing_suffix + "'"),
        surface_(std::move(surface)),
        failing_suffix_(std::move(failing_suffix)) {}

  const std::string& surface() const { return surface_; }
  const std::string& failing_suffix() const { return failing_suffix_; }

 private:
  std::string surface_;
  std::string failing_suffix_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonFiniteWeights : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class DegenerateJacobian : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

}  // namespace phonkit
