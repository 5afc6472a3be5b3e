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

#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/remap/vocab.hpp"
#include "phonkit/remap/weights.hpp"

namespace phonkit::cli {

int run_remap(const RemapOptions& o) {
  auto mode = remap::parse_mode(o.mode);
  if (!mode) throw UsageError("unknown remap mode '" + o.mode + "'");
  auto old = remap::load_wgt1(o.old_weights);
  auto fresh = ipa::PhonemeInventory::load(o.new_vocab);
  auto map = remap::derive_composition(fresh, old.vocab);
  auto out = remap::remap(old, map, fresh, *mode, o.seed);
  remap::save_wgt1(out, o.out);

  std::size_t composed = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i].size() < 2) continue;
    ++composed;
    std::cout << fresh.surface(i) << " =";
    for (std::size_t j : map[i]) std::cout << ' ' << old.vocab.surface(j);
    std::cout << '\n';
  }
  std::cout << o.mode << ": " << fresh.size() << " outputs (" << composed
            << " composed from several old entries), d=" << out.d << ", written to " << o.out << '\n';
  return 0;
}

}  // namespace phonkit::cli
