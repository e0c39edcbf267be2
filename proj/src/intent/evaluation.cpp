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

#include "negotiation/intent/evaluation.hpp"

#include <algorithm>

namespace negotiation::intent {

Evaluation evaluate(const LdaModel& model, std::span<const LabeledFeatures> samples)
{
  std::size_t k = model.goal_slots();
  for (const auto& s : samples) {
    k = std::max(k, s.label + 1);
  }
  Evaluation e;
  e.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (const auto& s : samples) {
    const auto est = lda_predict(model, s.x);
    if (!est.label) {
      continue;
    }
    ++e.n;
    ++e.confusion[s.label][*est.label];
    e.correct += *est.label == s.label;
  }
  return e;
}

}  // namespace negotiation::intent
