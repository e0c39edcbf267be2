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

#include "negotiation/signal/butterworth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "negotiation/core/errors.hpp"

namespace negotiation::signal {

std::complex<double> BiquadCoefficients::response(double omega) const
{
  const std::complex<double> z1 = std::polar(1.0, -omega);
  const std::complex<double> z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

std::array<std::complex<double>, 2> BiquadCoefficients::poles() const
{
  // Roots of z^2 + a1 z + a2.
  const std::complex<double> disc = std::sqrt(std::complex<double>(a1 * a1 - 4.0 * a2, 0.0));
  return {(-a1 + disc) / 2.0, (-a1 - disc) / 2.0};
}

bool BiquadCoefficients::stable() const
{
  for (const auto& p : poles()) {
    if (!(std::abs(p) < 1.0)) {
      return false;
    }
  }
  return true;
}

std::vector<BiquadCoefficients> design_lowpass(double cutoff_hz, double sample_hz, int order)
{
  if (!(sample_hz > 0.0) || !(cutoff_hz > 0.0) || !(cutoff_hz < sample_hz / 2.0)) {
    throw InvalidCutoff("cutoff " + std::to_string(cutoff_hz) + " Hz outside (0, " +
                        std::to_string(sample_hz / 2.0) + ") Hz");
  }
  if (order != 2 && order != 4) {
    throw InvalidCutoff("unsupported Butterworth order " + std::to_string(order));
  }

  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_hz);
  const int n_sections = order / 2;
  std::vector<BiquadCoefficients> sections;
  sections.reserve(n_sections);
  for (int s = 0; s < n_sections; ++s) {
    // Analog Butterworth pole pair at angle (2s+1)pi/(2N) from the imaginary axis.
    const double q = 1.0 / (2.0 * std::sin(std::numbers::pi * (2 * s + 1) / (2.0 * order)));
    const double norm = 1.0 / (1.0 + k / q + k * k);
    BiquadCoefficients c;
    c.b0 = k * k * norm;
    c.b1 = 2.0 * c.b0;
    c.b2 = c.b0;
    c.a1 = 2.0 * (k * k - 1.0) * norm;
    c.a2 = (1.0 - k / q + k * k) * norm;
    sections.push_back(c);
  }
  return sections;
}

double cascade_gain_db(std::span<const BiquadCoefficients> sections, double freq_hz, double sample_hz)
{
  const double omega = 2.0 * std::numbers::pi * freq_hz / sample_hz;
  std::complex<double> h{1.0, 0.0};
  for (const auto& s : sections) {
    h *= s.response(omega);
  }
  return 20.0 * std::log10(std::abs(h));
}

FilterState FilterState::zeros(std::size_t n_sections)
{
  return FilterState{std::vector<std::array<double, 2>>(n_sections, {0.0, 0.0})};
}

FilterState FilterState::warm(std::span<const BiquadCoefficients> sections, double x0)
{
  FilterState state = zeros(sections.size());
  double x = x0;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& c = sections[i];
    const double y = c.dc_gain() * x;
    state.registers[i][1] = c.b2 * x - c.a2 * y;
    state.registers[i][0] = c.b1 * x - c.a1 * y + state.registers[i][1];
    x = y;
  }
  return state;
}

double filter_step(FilterState& state, std::span<const BiquadCoefficients> sections, double x)
{
  double v = x;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& c = sections[i];
    auto& r = state.registers[i];
    const double y = c.b0 * v + r[0];
    r[0] = c.b1 * v - c.a1 * y + r[1];
    r[1] = c.b2 * v - c.a2 * y;
    v = y;
  }
  return v;
}

LowPassFilter::LowPassFilter(std::vector<BiquadCoefficients> sections)
  : sections_(std::move(sections)), state_(FilterState::zeros(sections_.size()))
{
}

double LowPassFilter::step(double x)
{
  if (!primed_) {
    state_ = FilterState::warm(sections_, x);
    primed_ = true;
  }
  return filter_step(state_, sections_, x);
}

WrenchFilter::WrenchFilter(const std::vector<BiquadCoefficients>& sections)
  : fx_(sections), fy_(sections), tau_(sections)
{
}

PlanarWrench WrenchFilter::step(const PlanarWrench& w)
{
  return {fx_.step(w.fx), fy_.step(w.fy), tau_.step(w.tau)};
}

void WrenchFilter::reset()
{
  fx_.reset();
  fy_.reset();
  tau_.reset();
}

}  // namespace negotiation::signal
