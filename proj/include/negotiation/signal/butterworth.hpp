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

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "negotiation/core/geometry.hpp"

namespace negotiation::signal {

/// Second-order section with a0 normalized to 1:
///   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
struct BiquadCoefficients {
  double b0{1.0};
  double b1{0.0};
  double b2{0.0};
  double a1{0.0};
  double a2{0.0};

  std::complex<double> response(double omega) const;
  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
  std::array<std::complex<double>, 2> poles() const;
  bool stable() const;
};

/// Butterworth low-pass as a cascade of biquads via the bilinear transform
/// with frequency pre-warping. `order` must be 2 or 4.
/// Throws InvalidCutoff unless 0 < cutoff_hz < sample_hz / 2.
std::vector<BiquadCoefficients> design_lowpass(double cutoff_hz, double sample_hz, int order = 2);

/// Magnitude response of a cascade at `freq_hz` in dB.
double cascade_gain_db(std::span<const BiquadCoefficients> sections, double freq_hz, double sample_hz);

/// Delay registers of a cascade, two per section (direct form II transposed).
struct FilterState {
  std::vector<std::array<double, 2>> registers;

  static FilterState zeros(std::size_t n_sections);
  /// Registers preloaded so that a constant input `x0` is already at steady state.
  static FilterState warm(std::span<const BiquadCoefficients> sections, double x0);
};

double filter_step(FilterState& state, std::span<const BiquadCoefficients> sections, double x);

/// One filtered scalar channel. The first sample warm-starts the registers.
class LowPassFilter {
 public:
  LowPassFilter() = default;
  explicit LowPassFilter(std::vector<BiquadCoefficients> sections);

  double step(double x);
  void reset() { primed_ = false; }
  bool primed() const { return primed_; }

 private:
  std::vector<BiquadCoefficients> sections_;
  FilterState state_;
  bool primed_{false};
};

/// Three independent channels for a planar wrench.
class WrenchFilter {
 public:
  WrenchFilter() = default;
  explicit WrenchFilter(const std::vector<BiquadCoefficients>& sections);

  PlanarWrench step(const PlanarWrench& w);
  void reset();

 private:
  LowPassFilter fx_;
  LowPassFilter fy_;
  LowPassFilter tau_;
};

}  // namespace negotiation::signal
