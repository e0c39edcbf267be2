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

#include "negotiation/signal/resample.hpp"

#include <cmath>
#include <stdexcept>

namespace negotiation::signal {

std::vector<TimedSample> resample(std::span<const TimedSample> input, double f_in, double f_out,
                                  Interpolation mode)
{
  if (!(f_in > 0.0) || !(f_out >= f_in)) {
    throw std::invalid_argument("resample requires f_out >= f_in > 0");
  }
  for (std::size_t i = 1; i < input.size(); ++i) {
    if (!(input[i].t > input[i - 1].t)) {
      throw NonMonotoneInput("input timestamp " + std::to_string(i) + " is not increasing");
    }
  }
  std::vector<TimedSample> out;
  if (input.empty()) {
    return out;
  }

  const double t0 = input.front().t;
  const double span = input.back().t - t0;
  // Small slack so grid points that land on the last input are not lost to rounding.
  const auto n_out = static_cast<std::size_t>(std::floor(span * f_out + 1e-9)) + 1;
  out.reserve(n_out);

  std::size_t j = 0;
  for (std::size_t k = 0; k < n_out; ++k) {
    const double t = t0 + static_cast<double>(k) / f_out;
    while (j + 1 < input.size() && input[j + 1].t <= t + 1e-12) {
      ++j;
    }
    double value = input[j].value;
    if (mode == Interpolation::Linear && j + 1 < input.size()) {
      const auto& a = input[j];
      const auto& b = input[j + 1];
      const double w = (t - a.t) / (b.t - a.t);
      value = a.value + w * (b.value - a.value);
    }
    out.push_back({t, value});
  }
  return out;
}

}  // namespace negotiation::signal
