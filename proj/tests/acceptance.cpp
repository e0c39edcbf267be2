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


// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hlc_properties.hpp"
#include "negotiation/action/action_force.hpp"
#include "negotiation/dynamics/admittance.hpp"
#include "negotiation/harness/batch.hpp"
#include "negotiation/harness/default_model.hpp"
#include "negotiation/human/training_data.hpp"
#include "negotiation/intent/evaluation.hpp"
#include "negotiation/intent/io.hpp"
#include "negotiation/intent/lda.hpp"
#include "negotiation/signal/butterworth.hpp"
#include "oracles.hpp"

namespace {

using namespace negotiation;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass{true};
  std::ostringstream detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Admittance fixed point and zero-force decay.
void admittance(Verdict& v)
{
  const auto t0 = Clock::now();
  const dynamics::AdmittanceParams p;
  dynamics::AdmittanceController c(p);
  double worst_oracle_gap = 0.0;
  const int steps = static_cast<int>(std::lround(5.0 / p.dt));
  for (int k = 1; k <= steps; ++k) {
    c.update({}, {0.0, 10.0, 0.0});
    const double closed_form = oracle::admittance_speed(10.0, p.mass_linear, p.damping_linear, p.dt, k);
    worst_oracle_gap = std::max(worst_oracle_gap, std::abs(c.twist().vy - closed_form));
  }
  const double speed = c.twist().linear_speed();
  const double fixed_point = 10.0 / p.damping_linear;

  dynamics::AdmittanceController d(p);
  for (int k = 0; k < 1000; ++k) {
    d.update({}, {6.0, -4.0, 0.3});
  }
  bool monotone = true;
  PlanarTwist prev = d.twist();
  for (int k = 0; k < 5000; ++k) {
    const auto& w = d.update({}, {});
    monotone = monotone && std::abs(w.vx) <= std::abs(prev.vx) && std::abs(w.vy) <= std::abs(prev.vy) &&
               std::abs(w.wz) <= std::abs(prev.wz) && w.vx * prev.vx >= 0.0 && w.vy * prev.vy >= 0.0 &&
               w.wz * prev.wz >= 0.0;
    prev = w;
  }
  const double elapsed = seconds_since(t0);
  v.require(std::abs(speed - 0.400) <= 1e-3, "speed within 1e-3 of 0.400");
  v.require(std::abs(fixed_point - 0.400) < 1e-15, "F/B fixed point is 0.400");
  v.require(worst_oracle_gap < 1e-12, "trajectory matches closed form");
  v.require(monotone, "monotone decay per axis");
  v.require(elapsed < 1.0, "runtime < 1 s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "speed %.6f m/s at 5 s, closed-form gap %.1e, monotone decay %s, %.3f s", speed,
                worst_oracle_gap, monotone ? "yes" : "no", elapsed);
  v.detail << buf;
}

// 2. Action-force first-order lag and convex-combination bound.
void action_force(Verdict& v)
{
  action::ActionForceState s;
  action::set_reference(s, {1.0, 0.0}, 10.0, {});
  const int steps = static_cast<int>(std::lround(0.2 / 0.002));
  for (int k = 0; k < steps; ++k) {
    action::action_force_step(s, 0.002, false);
  }
  const double fraction = s.f_act.fx / 10.0;

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 20.0);
  std::uniform_int_distribution<int> hold(1, 200);
  action::ActionForceState r;
  r.f_act = {5.0, -3.0, 0.0};
  long violations = 0;
  int next_change = 0;
  for (int k = 0; k < 100000; ++k) {
    if (k == next_change) {
      const Vec2 dir{u(rng), u(rng)};
      if (dir.norm() > 1e-6) {
        action::set_reference(r, dir * (1.0 / dir.norm()), mag(rng), {});
      }
      next_change = k + hold(rng);
    }
    const double before = r.f_act.magnitude();
    action::action_force_step(r, 0.002, false);
    violations += r.f_act.magnitude() > std::max(before, r.f_ref.magnitude()) + 1e-12;
  }
  v.require(std::abs(fraction - 0.632) <= 0.01, "63.2% +- 1% at 0.2 s");
  v.require(violations == 0, "convex-combination bound");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%.2f%% of reference at 0.2 s, %ld bound violations in 1e5 steps", 100.0 * fraction,
                violations);
  v.detail << buf;
}

// 3. Sensor filter design.
void filter(Verdict& v)
{
  const auto sections = signal::design_lowpass(5.0, 500.0, 2);
  double dc = 1.0;
  bool stable = true;
  double max_pole = 0.0;
  for (const auto& s : sections) {
    dc *= s.dc_gain();
    for (const auto& p : s.poles()) {
      max_pole = std::max(max_pole, std::abs(p));
      stable = stable && std::abs(p) < 1.0;
    }
  }
  const double att_design = -signal::cascade_gain_db(sections, 50.0, 500.0);
  const double att_oracle = -20.0 * std::log10(oracle::butterworth_magnitude(50.0, 5.0, 500.0, 2));

  // Measured: steady-state amplitude of a streamed 50 Hz sine.
  signal::LowPassFilter f(sections);
  double peak = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const double y = f.step(std::sin(2.0 * 3.14159265358979323846 * 50.0 * k / 500.0));
    if (k >= 4000) {
      peak = std::max(peak, std::abs(y));
    }
  }
  const double att_measured = -20.0 * std::log10(peak);

  v.require(std::abs(dc - 1.0) <= 1e-9, "DC gain 1 +- 1e-9");
  v.require(att_design >= 38.0, "design attenuation >= 38 dB at 50 Hz");
  v.require(att_oracle >= 38.0, "analytic attenuation >= 38 dB at 50 Hz");
  v.require(std::abs(att_design - att_oracle) < 1e-6, "design matches analytic response");
  v.require(att_measured >= 38.0, "measured attenuation >= 38 dB");
  v.require(stable, "poles inside the unit circle");
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "DC gain %.12f, 50 Hz attenuation %.2f dB (analytic %.2f, streamed %.2f), max |pole| %.4f", dc,
                att_design, att_oracle, att_measured, max_pole);
  v.detail << buf;
}

// 4. LDA oracle equivalence and held-out accuracy.
void lda(Verdict& v)
{
  const auto t0 = Clock::now();
  const std::size_t p = intent::kFeatureCount;
  const auto blobs = oracle::make_blobs(200, 3, p, 1.5, 4);
  std::vector<intent::LabeledFeatures> samples;
  for (std::size_t i = 0; i < blobs.xs.size(); ++i) {
    intent::LabeledFeatures s;
    for (std::size_t j = 0; j < p; ++j) {
      s.x[j] = blobs.xs[i](static_cast<Eigen::Index>(j));
    }
    s.label = blobs.ys[i];
    samples.push_back(s);
  }
  const auto model = intent::lda_fit(samples);
  const oracle::GaussianMap map(blobs.xs, blobs.ys, intent::kDefaultRidgeScale);
  std::mt19937_64 rng(44);
  std::normal_distribution<double> n(0.0, 4.0);
  int disagreements = 0;
  int ties = 0;
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(p));
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      x(j) = n(rng);
    }
    if (map.margin(x) < 1e-9) {
      ++ties;  // both labels are MAP here
      continue;
    }
    disagreements += *intent::lda_predict(model, x).label != map.classify(x);
  }

  const auto profile = harness::Profile::defaults();
  std::mt19937_64 data_rng(profile.training.seed);
  const auto set = human::generate_training_trials(18, harness::training_setup(profile), data_rng);
  const auto [train, test] = human::split_by_trial(set.records, 12);
  const auto held_model =
      intent::lda_fit(intent::to_labeled(train), profile.intent.lambda, profile.intent.ridge_scale);
  const auto test_samples = intent::to_labeled(test);
  const auto e = intent::evaluate(held_model, test_samples);
  const double elapsed = seconds_since(t0);

  v.require(disagreements == 0, "zero disagreements with the MAP oracle");
  v.require(e.accuracy() >= 0.90, "held-out accuracy >= 90%");
  v.require(elapsed < 10.0, "runtime < 10 s");
  char buf[240];
  std::snprintf(buf, sizeof buf, "%d oracle disagreements (%d exact ties), held-out accuracy %.2f%% (%zu/%zu), %.2f s",
                disagreements, ties, 100.0 * e.accuracy(), e.correct, e.n, elapsed);
  v.detail << buf;
}

// 5. State-machine properties over random input streams.
void state_machines(Verdict& v)
{
  long ticks = 0;
  long violations = 0;
  long aborts = 0;
  long ahg = 0;
  std::uint64_t seed = 50;
  for (auto m : {hlc::Machine::Hard, hlc::Machine::Soft, hlc::Machine::Kcg, hlc::Machine::Follower}) {
    const auto r = hlc_properties::check(m, seed++);
    ticks += r.ticks;
    violations += r.violations;
    aborts += r.aborts_expected;
    ahg += r.ahg_entries;
    if (r.violations) {
      v.detail << to_string(m) << ": " << r.first_violation << "; ";
    }
    v.require(r.ticks >= 100000, std::string(to_string(m)) + " ran 1e5 ticks");
  }
  v.require(violations == 0, "no property violations");
  v.require(aborts > 0 && ahg > 0, "abort and AHG paths exercised");
  v.detail << ticks << " ticks over 4 machines, " << violations << " violations, " << aborts
           << " abort checks, " << ahg << " AHG entries";
}

harness::BatchResult pinned_batch(harness::RobotMode robot, Commitment human, std::size_t n, std::uint64_t seed)
{
  harness::AssignmentGenerator gen;
  gen.n_trials = n;
  gen.seed = seed;
  gen.fixed_pair = {robot, human};
  const auto profile = harness::Profile::defaults();
  harness::BatchOptions o;
  o.jobs = jobs();
  o.model = harness::default_intent_model(profile);
  o.digests = false;
  return harness::run_batch(harness::generate_configs(gen, profile), o);
}

// 6. Follower robot with a hard scripted partner.
void follower(Verdict& v)
{
  const auto t0 = Clock::now();
  const auto r = pinned_batch(harness::RobotMode::Follower, Commitment::Hard, 100, 6);
  const double elapsed = seconds_since(t0);
  std::size_t nominal_at_human_goal = 0;
  for (const auto& row : r.rows) {
    if (row.metrics && row.metrics->outcome == harness::OutcomeKind::Nominal && row.metrics->final_goal &&
        row.config.human.goal_index && *row.metrics->final_goal == *row.config.human.goal_index) {
      ++nominal_at_human_goal;
    }
  }
  const double rate = static_cast<double>(nominal_at_human_goal) / 100.0;
  v.require(r.overall.failed == 0, "no failed trials");
  v.require(rate >= 0.90, ">= 90% nominal at the human goal");
  v.require(elapsed < 30.0, "runtime < 30 s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/100 nominal at the human goal, %zu aborts, %.2f s", nominal_at_human_goal,
                r.overall.aborts, elapsed);
  v.detail << buf;
}

harness::BatchResult hard_soft_batch;
harness::BatchResult soft_soft_batch;

// 7. Hard robot against soft scripted partners.
void hard_robot(Verdict& v)
{
  hard_soft_batch = pinned_batch(harness::RobotMode::Hard, Commitment::Soft, 200, 7);
  const auto& g = hard_soft_batch.overall;
  std::size_t delivered = 0;
  for (const auto& row : hard_soft_batch.rows) {
    delivered += row.metrics && row.metrics->final_goal && row.config.robot.goal &&
                 (row.metrics->outcome == harness::OutcomeKind::Nominal ||
                  row.metrics->outcome == harness::OutcomeKind::Forced) &&
                 *row.metrics->final_goal == *row.config.robot.goal;
  }
  const double delivery = static_cast<double>(delivered) / 200.0;
  const double abort = static_cast<double>(g.aborts) / 200.0;
  const auto ci = harness::wilson_interval(delivered, 200);
  v.require(g.failed == 0, "no failed trials");
  v.require(delivery >= 0.85, "delivery to robot goal >= 85%");
  v.require(abort <= 0.10, "abort rate <= 10%");
  char buf[200];
  std::snprintf(buf, sizeof buf, "delivery %.1f%% (95%% CI %.1f-%.1f), abort %.1f%%, timeout %zu", 100.0 * delivery,
                100.0 * ci.lo, 100.0 * ci.hi, 100.0 * abort, g.timeouts);
  v.detail << buf;
}

// 8. Soft robot against soft scripted partners.
void soft_robot(Verdict& v)
{
  soft_soft_batch = pinned_batch(harness::RobotMode::Soft, Commitment::Soft, 200, 8);
  const auto& g = soft_soft_batch.overall;
  const double success = static_cast<double>(g.successes) / 200.0;
  const double robot_win = static_cast<double>(g.robot_wins) / 200.0;
  const auto ci = harness::wilson_interval(g.successes, 200);
  v.require(g.failed == 0, "no failed trials");
  v.require(success >= 0.85, "combined success >= 85%");
  v.require(robot_win >= 0.35 && robot_win <= 0.75, "robot-win fraction in [35%, 75%]");
  char buf[200];
  std::snprintf(buf, sizeof buf, "success %.1f%% (95%% CI %.1f-%.1f), robot wins %.1f%%, human wins %.1f%%, abort %zu",
                100.0 * success, 100.0 * ci.lo, 100.0 * ci.hi, 100.0 * robot_win,
                100.0 * static_cast<double>(g.human_wins) / 200.0, g.aborts);
  v.detail << buf;
}

// 9. Switching statistics pooled over the batches of 7 and 8.
void switching(Verdict& v)
{
  harness::GroupSummary pooled;
  for (const auto* b : {&hard_soft_batch, &soft_soft_batch}) {
    for (const auto& row : b->rows) {
      pooled.add(row);
    }
  }
  v.require(pooled.n == 400, "both batches available");
  const double sw = pooled.mean_switches();
  const double agree = pooled.mean_agreement();
  const double disagree = pooled.mean_disagreement();
  v.require(sw <= 1.5, "mean switches <= 1.5");
  v.require(agree >= 0.5 && agree <= 3.0, "mean Agreement duration in [0.5, 3] s");
  v.require(disagree >= 0.5 && disagree <= 3.0, "mean Disagreement duration in [0.5, 3] s");
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "pooled: %.2f switches/trial, Agreement %.2f s, Disagreement %.2f s "
                "(hard-soft %.2f/%.2f s/%.2f s, soft-soft %.2f/%.2f s/%.2f s)",
                sw, agree, disagree, hard_soft_batch.overall.mean_switches(),
                hard_soft_batch.overall.mean_agreement(), hard_soft_batch.overall.mean_disagreement(),
                soft_soft_batch.overall.mean_switches(), soft_soft_batch.overall.mean_agreement(),
                soft_soft_batch.overall.mean_disagreement());
  v.detail << buf;
}

// 10. Determinism across runs and worker counts.
void determinism(Verdict& v)
{
  const auto profile = harness::Profile::defaults();
  harness::AssignmentGenerator gen;
  gen.n_trials = 240;
  gen.seed = 240;
  const auto configs = harness::generate_configs(gen, profile);
  auto render = [&](unsigned j, double& elapsed) {
    const auto t0 = Clock::now();
    harness::BatchOptions o;
    o.jobs = j;
    o.model = harness::default_intent_model(profile);
    const auto r = harness::run_batch(configs, o);
    elapsed = seconds_since(t0);
    std::ostringstream s;
    harness::write_batch_csv(s, r);
    s << harness::batch_summary_json(r).dump();
    return s.str();
  };
  double t1 = 0.0;
  double t1b = 0.0;
  double t4 = 0.0;
  const auto a = render(1, t1);
  const auto b = render(1, t1b);
  const auto c = render(4, t4);
  v.require(a == b, "identical across runs");
  v.require(a == c, "identical for 1 and 4 workers");
  v.require(std::max({t1, t1b, t4}) < 60.0, "each run < 60 s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu bytes of CSV+summary, runs %s, jobs 1/1/4 took %.2f/%.2f/%.2f s", a.size(),
                (a == b && a == c) ? "identical" : "DIFFER", t1, t1b, t4);
  v.detail << buf;
}

}  // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
      {"admittance fixed point", admittance},
      {"action-force lag", action_force},
      {"sensor filter", filter},
      {"intent classifier", lda},
      {"state-machine properties", state_machines},
      {"follower vs hard partner", follower},
      {"hard vs soft partner", hard_robot},
      {"soft vs soft partner", soft_robot},
      {"switching statistics", switching},
      {"determinism and throughput", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict v;
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failures += !v.pass;
    std::printf("criterion %2d %-28s %s  %s\n", index, name, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
