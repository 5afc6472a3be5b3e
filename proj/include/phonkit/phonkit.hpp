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

#include "phonkit/analysis/sigmoid.hpp"
#include "phonkit/analysis/stats.hpp"
#include "phonkit/analysis/support.hpp"
#include "phonkit/core/csv.hpp"
#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/core/ranks.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/config.hpp"
#include "phonkit/corpus/eaf.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/corpus/normalize.hpp"
#include "phonkit/corpus/summary.hpp"
#include "phonkit/corpus/textgrid.hpp"
#include "phonkit/decode/arpa.hpp"
#include "phonkit/decode/ctc.hpp"
#include "phonkit/decode/logits.hpp"
#include "phonkit/decode/ngram.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/ipa/phoneme.hpp"
#include "phonkit/ipa/segment.hpp"
#include "phonkit/ipa/transliterate.hpp"
#include "phonkit/metrics/align.hpp"
#include "phonkit/metrics/confusion.hpp"
#include "phonkit/metrics/error_rate.hpp"
#include "phonkit/metrics/tally.hpp"
#include "phonkit/metrics/wilcoxon.hpp"
#include "phonkit/remap/vocab.hpp"
#include "phonkit/remap/weights.hpp"
