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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "negotiation/core/errors.hpp"
#include "negotiation/signal/butterworth.hpp"
#include "negotiation/signal/resample.hpp"
#include "negotiation/signal/sensing.hpp"
#include "oracles.hpp"

namespace negotiation::signal {
namespace {

TEST(Butterworth, DcGainAndStability)
{
  for (int order : {2, 4}) {
    const auto sections = design_lowpass(5.0, 500.0, order);
    ASSERT_EQ(sections.size(), static_cast<std::size_t>(order / 2));
    double dc = 1.0;
    for (const auto& s : sections) {
      dc *= s.dc_gain();
      EXPECT_TRUE(s.stable());
      for (const auto& p : s.poles()) {
        EXPECT_LT(std::abs(p), 1.0);
      }
    }
    EXPECT_NEAR(dc, 1.0, 1e-9);
  }
}

TEST(Butterworth, MagnitudeMatchesAnalyticResponse)
{
  for (int order : {2, 4}) {
    const auto sections = design_lowpass(5.0, 500.0, order);
    for (double f : {0.5, 2.0, 5.0, 10.0, 50.0, 120.0, 240.0}) {
      const double want = 20.0 * std::log10(oracle::butterworth_magnitude(f, 5.0, 500.0, order));
      EXPECT_NEAR(cascade_gain_db(sections, f, 500.0), want, 1e-6) << "order " << order << " f " << f;
    }
  }
}

TEST(Butterworth, CutoffIsMinusThreeDecibels)
{
  const auto sections = design_lowpass(5.0, 500.0, 2);
  EXPECT_NEAR(cascade_gain_db(sections, 5.0, 500.0), -3.0103, 1e-3);
  EXPECT_LE(cascade_gain_db(sections, 50.0, 500.0), -38.0);
}

TEST(Butterworth, RejectsBadCutoff)
{
  EXPECT_THROW(design_lowpass(0.0, 500.0), InvalidCutoff);
  EXPECT_THROW(design_lowpass(250.0, 500.0), InvalidCutoff);
  EXPECT_THROW(design_lowpass(-1.0, 500.0), InvalidCutoff);
}

TEST(Butterworth, StepResponseSettlesToInput)
{
  LowPassFilter f(design_lowpass(5.0, 500.0, 2));
  f.step(0.0);
  double y = 0.0;
  for (int i = 0; i < 2000; ++i) {
    y = f.step(1.0);
  }
  EXPECT_NEAR(y, 1.0, 1e-9);
}

TEST(Butterworth, WarmStartHoldsConstantInput)
{
  LowPassFilter f(design_lowpass(5.0, 500.0, 4));
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(f.step(7.5), 7.5, 1e-9);
  }
}

TEST(Butterworth, SinusoidAttenuation)
{
  // Steady-state amplitude of a 50 Hz tone after filtering equals the analytic gain.
  LowPassFilter f(design_lowpass(5.0, 500.0, 2));
  double peak = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const double y = f.step(std::sin(2.0 * std::numbers::pi * 50.0 * i / 500.0));
    if (i > 4000) {
      peak = std::max(peak, std::abs(y));
    }
  }
  EXPECT_NEAR(peak, oracle::butterworth_magnitude(50.0, 5.0, 500.0, 2), 2e-4);
}

TEST(Resample, HoldRepeatsLatest)
{
  std::vector<TimedSample> in{{0.0, 1.0}, {0.005, 2.0}, {0.010, 3.0}};
  const auto out = resample(in, 200.0, 500.0, Interpolation::Hold);
  ASSERT_EQ(out.size(), 6u);
  const double want[] = {1.0, 1.0, 1.0, 2.0, 2.0, 3.0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(out[i].t, 0.002 * static_cast<double>(i), 1e-12);
    EXPECT_DOUBLE_EQ(out[i].value, want[i]);
  }
}

TEST(Resample, LinearInterpolates)
{
  std::vector<TimedSample> in{{0.0, 0.0}, {0.005, 5.0}, {0.010, 0.0}};
  const auto out = resample(in, 200.0, 500.0, Interpolation::Linear);
  EXPECT_NEAR(out[1].value, 2.0, 1e-9);
  EXPECT_NEAR(out[3].value, 4.0, 1e-9);
}

TEST(Resample, Errors)
{
  std::vector<TimedSample> bad{{0.0, 0.0}, {0.0, 1.0}};
  EXPECT_THROW(resample(bad, 200.0, 500.0), NonMonotoneInput);
  std::vector<TimedSample> ok{{0.0, 0.0}, {0.01, 1.0}};
  EXPECT_THROW(resample(ok, 500.0, 200.0), std::invalid_argument);
  SampleHold<double> h;
  h.push(1.0, 2.0);
  EXPECT_THROW(h.push(1.0, 3.0), NonMonotoneInput);
}

TEST(Sensing, SamplesAtSensorRate)
{
  // 500 Hz control, 200 Hz sensor: the held value changes at most twice per 5 ticks.
  SensingChain chain;
  int changes = 0;
  PlanarWrench prev{};
  for (int k = 0; k < 500; ++k) {
    const double t = k * 0.002;
    chain.step(t, {static_cast<double>(k), 0.0, 0.0});
    if (k > 0 && chain.held().fx != prev.fx) {
      ++changes;
    }
    prev = chain.held();
  }
  EXPECT_NEAR(changes, 199, 1);
}

TEST(Sensing, ConvergesToConstantWrench)
{
  SensingChain chain;
  PlanarWrench out{};
  chain.step(0.0, {});
  for (int k = 1; k < 1500; ++k) {
    out = chain.step(k * 0.002, {4.0, -2.0, 0.5});
  }
  EXPECT_NEAR(out.fx, 4.0, 1e-6);
  EXPECT_NEAR(out.fy, -2.0, 1e-6);
  EXPECT_NEAR(out.tau, 0.5, 1e-6);
}

}  // namespace
}  // namespace negotiation::signal
