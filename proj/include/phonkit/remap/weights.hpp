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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/ipa/inventory.hpp"

namespace phonkit::remap {

// Output layer of a CTC head: W is d x |V| stored column-major (one
// contiguous column per vocabulary entry), b has one entry per column.
struct WeightBundle {
  std::size_t d = 0;
  std::vector<float> W;
  std::vector<float> b;
  ipa::PhonemeInventory vocab;

  std::size_t columns() const { return vocab.size(); }
  float* column(std::size_t j) { return W.data() + j * d; }
  const float* column(std::size_t j) const { return W.data() + j * d; }

  void check() const {
    if (W.size() != d * vocab.size() || b.size() != vocab.size()) {
      throw ShapeError("weight bundle has " + std::to_string(W.size()) + " weights and " +
                       std::to_string(b.size()) + " biases for d=" + std::to_string(d) +
                       ", |V|=" + std::to_string(vocab.size()));
    }
  }

  bool all_finite() const {
    for (float v : W) {
      if (!std::isfinite(v)) return false;
    }
    for (float v : b) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

// WGT1: "WGT1", u32 d, u32 V, d*V f32 (column-major W), V f32 (b), then the
// inventory text as a u32-length-prefixed blob. Little-endian throughout.
inline std::string encode_wgt1(const WeightBundle& w) {
  w.check();
  io::ByteWriter out;
  out.magic("WGT1");
  out.u32(static_cast<std::uint32_t>(w.d));
  out.u32(static_cast<std::uint32_t>(w.vocab.size()));
  for (float v : w.W) out.f32(v);
  for (float v : w.b) out.f32(v);
  out.blob(w.vocab.serialize());
  return out.bytes();
}

inline WeightBundle decode_wgt1(std::string_view bytes) {
  io::ByteReader in(bytes, "WGT1");
  in.expect_magic("WGT1");
  WeightBundle w;
  w.d = in.u32();
  std::size_t v = in.u32();
  if (in.remaining() < (w.d * v + v) * 4) throw ParseError("WGT1: truncated file");
  w.W.resize(w.d * v);
  for (auto& x : w.W) x = in.f32();
  w.b.resize(v);
  for (auto& x : w.b) x = in.f32();
  w.vocab = ipa::PhonemeInventory::parse(in.blob());
  if (!in.at_end()) throw ParseError("WGT1: trailing bytes");
  if (w.vocab.size() != v) {
    throw ShapeError("WGT1: header says V=" + std::to_string(v) +
                     " but the embedded inventory has " + std::to_string(w.vocab.size()));
  }
  return w;
}

inline void save_wgt1(const WeightBundle& w, const std::filesystem::path& path) {
  io::write_file(path, encode_wgt1(w));
}

inline WeightBundle load_wgt1(const std::filesystem::path& path) {
  return decode_wgt1(io::read_file(path));
}

}  // namespace phonkit::remap
