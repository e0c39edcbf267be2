// Copyright 2026 The negotiation_sim Authors
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "negotiation/intent/lda.hpp"

namespace negotiation::intent {

struct Evaluation {
  std::size_t n{0};
  std::size_t correct{0};
  /// confusion[true][predicted]
  std::vector<std::vector<std::size_t>> confusion;

  double accuracy() const { return n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0; }
};

/// Classifies every sample with \p model. Samples are assumed non-idle.
Evaluation evaluate(const LdaModel& model, std::span<const LabeledFeatures> samples);

}  // namespace negotiation::intent
