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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"

namespace phonkit::decode {

// T x V per-frame log-probabilities, row-major.
class LogitMatrix {
 public:
  static constexpr double kRowTolerance = 1e-4;

  LogitMatrix() = default;
  LogitMatrix(std::size_t frames, std::size_t vocab)
      : frames_(frames), vocab_(vocab), values_(frames * vocab, 0.0f) {}
  LogitMatrix(std::size_t frames, std::size_t vocab, std::vector<float> values)
      : frames_(frames), vocab_(vocab), values_(std::move(values)) {
    if (values_.size() != frames_ * vocab_) {
      throw ShapeError("logit buffer holds " + std::to_string(values_.size()) +
                       " values, expected " + std::to_string(frames_ * vocab_));
    }
  }

  std::size_t frames() const { return frames_; }
  std::size_t vocab() const { return vocab_; }
  const std::vector<float>& values() const { return values_; }

  float operator()(std::size_t t, std::size_t v) const { return values_[t * vocab_ + v]; }
  float& operator()(std::size_t t, std::size_t v) { return values_[t * vocab_ + v]; }

  std::span<const float> row(std::size_t t) const {
    return std::span<const float>(values_).subspan(t * vocab_, vocab_);
  }

  // Throws InvalidLogits on NaN and, unless `allow_raw`, on rows whose
  // exponentials do not sum to 1 within kRowTolerance.
  void validate(bool allow_raw = false) const {
    for (std::size_t t = 0; t < frames_; ++t) {
      double sum = 0.0;
      for (float v : row(t)) {
        if (std::isnan(v)) {
          throw InvalidLogits("NaN at frame " + std::to_string(t));
        }
        sum += std::exp(static_cast<double>(v));
      }
      if (!allow_raw && vocab_ > 0 && std::fabs(sum - 1.0) > kRowTolerance) {
        throw InvalidLogits("frame " + std::to_string(t) +
                            " is not log-softmax normalized (sum of exp = " +
                            std::to_string(sum) + ")");
      }
    }
  }

  // Row-wise log-softmax, for raw network outputs.
  LogitMatrix log_softmax() const {
    LogitMatrix out(frames_, vocab_);
    for (std::size_t t = 0; t < frames_; ++t) {
      auto r = row(t);
      double mx = -INFINITY;
      for (float v : r) mx = std::max(mx, static_cast<double>(v));
      double sum = 0.0;
      for (float v : r) sum += std::exp(static_cast<double>(v) - mx);
      double lse = mx + std::log(sum);
      for (std::size_t v = 0; v < vocab_; ++v) {
        out(t, v) = static_cast<float>(static_cast<double>(r[v]) - lse);
      }
    }
    return out;
  }

  friend bool operator==(const LogitMatrix&, const LogitMatrix&) = default;

 private:
  std::size_t frames_ = 0;
  std::size_t vocab_ = 0;
  std::vector<float> values_;
};

// CTL1 container: "CTL1", u32 T, u32 V, then T*V float32, all little-endian.
inline std::string encode_ctl1(const LogitMatrix& m) {
  io::ByteWriter w;
  w.magic("CTL1");
  w.u32(static_cast<std::uint32_t>(m.frames()));
  w.u32(static_cast<std::uint32_t>(m.vocab()));
  for (float v : m.values()) w.f32(v);
  return w.bytes();
}

inline LogitMatrix decode_ctl1(std::string_view bytes) {
  io::ByteReader r(bytes, "CTL1");
  r.expect_magic("CTL1");
  std::size_t t = r.u32(), v = r.u32();
  if (r.remaining() != t * v * 4) {
    throw ParseError("CTL1: payload holds " + std::to_string(r.remaining()) +
                     " bytes, header implies " + std::to_string(t * v * 4));
  }
  std::vector<float> values(t * v);
  for (auto& x : values) x = r.f32();
  return LogitMatrix(t, v, std::move(values));
}

inline void save_ctl1(const LogitMatrix& m, const std::filesystem::path& path) {
  io::write_file(path, encode_ctl1(m));
}

inline LogitMatrix load_ctl1(const std::filesystem::path& path) {
  return decode_ctl1(io::read_file(path));
}

}  // namespace phonkit::decode
