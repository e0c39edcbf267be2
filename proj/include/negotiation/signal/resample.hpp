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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negotiation/core/errors.hpp"

namespace negotiation::signal {

struct TimedSample {
  double t{0.0};
  double value{0.0};
};

enum class Interpolation { Hold, Linear };

/// Upsamples a timestamped stream onto a uniform grid at `f_out`, starting at
/// the first input timestamp and ending at the last. Hold repeats the latest
/// input at or before each output time; Linear interpolates between the
/// bracketing inputs.
/// Throws NonMonotoneInput on non-increasing timestamps and std::invalid_argument
/// when f_out < f_in.
std::vector<TimedSample> resample(std::span<const TimedSample> input, double f_in, double f_out,
                                  Interpolation mode = Interpolation::Hold);

/// Real-time zero-order hold: the consumer reads the most recent sample.
template <typename T>
class SampleHold {
 public:
  void push(double t, const T& value)
  {
    if (last_t_ && !(t > *last_t_)) {
      throw NonMonotoneInput("sample at t=" + std::to_string(t) + " does not advance past t=" +
                             std::to_string(*last_t_));
    }
    last_t_ = t;
    value_ = value;
  }

  bool has_value() const { return last_t_.has_value(); }
  const T& value() const { return value_; }
  std::optional<double> last_time() const { return last_t_; }

  void reset()
  {
    last_t_.reset();
    value_ = T{};
  }

 private:
  std::optional<double> last_t_;
  T value_{};
};

}  // namespace negotiation::signal
