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

#include "negotiation/signal/sensing.hpp"

#include "negotiation/core/errors.hpp"

namespace negotiation::signal {

SensingChain::SensingChain(const SensingParams& params)
  : params_(params), filter_(design_lowpass(params.cutoff_hz, params.control_hz, params.order))
{
  if (!(params.sensing_hz > 0.0) || params.sensing_hz > params.control_hz) {
    throw ConfigError("sensing rate must be positive and not above the control rate");
  }
}

PlanarWrench SensingChain::step(double t, const PlanarWrench& truth)
{
  // Next sensor sample is due at n / sensing_hz; 1 us of slack absorbs rounding.
  const double due = static_cast<double>(n_sampled_) / params_.sensing_hz;
  if (t + 1e-6 >= due) {
    hold_.push(t, truth);
    ++n_sampled_;
  }
  filtered_ = filter_.step(hold_.value());
  return filtered_;
}

void SensingChain::reset()
{
  filter_.reset();
  hold_.reset();
  n_sampled_ = 0;
  filtered_ = {};
}

}  // namespace negotiation::signal
