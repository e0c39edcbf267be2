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

#include <cstdint>

#include "negotiation/core/geometry.hpp"
#include "negotiation/signal/butterworth.hpp"
#include "negotiation/signal/resample.hpp"

namespace negotiation::signal {

struct SensingParams {
  double sensing_hz{200.0};
  double control_hz{500.0};
  double cutoff_hz{5.0};
  int order{2};
};

/// Simulated force-torque sensor stream: the true wrench is sampled at
/// sensing_hz, held up to the control rate and low-pass filtered there.
class SensingChain {
 public:
  explicit SensingChain(const SensingParams& params = {});

  /// Called once per control tick with the true wrench at time `t`.
  PlanarWrench step(double t, const PlanarWrench& truth);

  const PlanarWrench& filtered() const { return filtered_; }
  const PlanarWrench& held() const { return hold_.value(); }
  void reset();

 private:
  SensingParams params_;
  WrenchFilter filter_;
  SampleHold<PlanarWrench> hold_;
  std::uint64_t n_sampled_{0};
  PlanarWrench filtered_;
};

}  // namespace negotiation::signal
