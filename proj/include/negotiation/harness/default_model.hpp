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

#include <memory>

#include "negotiation/harness/profile.hpp"
#include "negotiation/human/training_data.hpp"
#include "negotiation/intent/lda.hpp"

namespace negotiation::harness {

/// Passive-robot data collection matching the profile's plant, sensing and
/// intent settings.
human::TrainingSetup training_setup(const Profile& p);

/// Generates the profile's training trials and fits the intent model.
intent::LdaModel train_default_model(const Profile& p);

/// As train_default_model, computed once per distinct profile and shared.
/// Thread-safe.
std::shared_ptr<const intent::LdaModel> default_intent_model(const Profile& p);

}  // namespace negotiation::harness
