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


#include "negotiation/harness/default_model.hpp"

#include <map>
#include <mutex>
#include <random>
#include <string>

#include "negotiation/intent/io.hpp"

namespace negotiation::harness {

human::TrainingSetup training_setup(const Profile& p)
{
  human::TrainingSetup s;
  s.goals = p.goals;
  s.admittance = p.admittance;
  s.sensing = p.sensing();
  s.intent_hz = p.rates.intent_hz;
  s.idle_threshold = p.intent.idle_threshold;
  s.human = p.human.hard;
  s.human.heading_wobble_std = p.training.heading_wobble_std;
  s.nominal_force_range = p.training.nominal_force_range;
  s.reaction_delay_range = p.training.reaction_delay_range;
  s.max_trial_duration = p.training.max_trial_duration;
  return s;
}

intent::LdaModel train_default_model(const Profile& p)
{
  std::mt19937_64 rng(p.training.seed);
  const auto set = human::generate_training_trials(p.training.n_trials, training_setup(p), rng);
  const auto labeled = intent::to_labeled(set.records);
  return intent::lda_fit(labeled, p.intent.lambda, p.intent.ridge_scale);
}

std::shared_ptr<const intent::LdaModel> default_intent_model(const Profile& p)
{
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const intent::LdaModel>> cache;

  // Only the parts of the profile that feed training matter, but the whole
  // profile is a cheap and safe key.
  const std::string key = to_json(p).dump();
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_shared<const intent::LdaModel>(train_default_model(p))).first;
  }
  return it->second;
}

}  // namespace negotiation::harness
