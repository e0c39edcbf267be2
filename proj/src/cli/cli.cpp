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

#include "negotiation/cli/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "negotiation/bridge/server.hpp"
#include "negotiation/core/errors.hpp"
#include "negotiation/harness/batch.hpp"
#include "negotiation/harness/default_model.hpp"
#include "negotiation/harness/log_io.hpp"
#include "negotiation/harness/metrics.hpp"
#include "negotiation/harness/profile.hpp"
#include "negotiation/harness/trial.hpp"
#include "negotiation/human/training_data.hpp"
#include "negotiation/intent/evaluation.hpp"
#include "negotiation/intent/io.hpp"

namespace negotiation::cli {

using nlohmann::json;
namespace h = negotiation::harness;

namespace {

/// Bad flag values discovered after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fixed(double v, int digits = 3)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Common {
  std::string profile_path;
  bool json_out{false};

  h::Profile profile() const { return profile_path.empty() ? h::profile_from_environment() : h::load_profile(profile_path); }
};

std::ofstream open_out(const std::string& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  return out;
}

std::shared_ptr<const intent::LdaModel> model_for(const std::string& path, const h::Profile& p)
{
  if (path.empty()) {
    return h::default_intent_model(p);
  }
  return std::make_shared<const intent::LdaModel>(intent::load_model(path));
}

// gen-data

struct GenData {
  std::size_t trials{18};
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint32_t> train_trials;
  std::string test_out;
};

void gen_data(const Common& c, const GenData& o, std::ostream& out)
{
  if (!o.test_out.empty() && !o.train_trials) {
    throw UsageError("--test-out needs --train-trials");
  }
  const auto p = c.profile();
  std::mt19937_64 rng(o.seed.value_or(p.training.seed));
  const auto set = human::generate_training_trials(o.trials, h::training_setup(p), rng);

  std::size_t n_train = set.records.size();
  std::size_t n_test = 0;
  if (o.train_trials && !o.test_out.empty()) {
    const auto [train, test] = human::split_by_trial(set.records, *o.train_trials);
    intent::save_training_set(o.out, train);
    intent::save_training_set(o.test_out, test);
    n_train = train.size();
    n_test = test.size();
  } else {
    intent::save_training_set(o.out, set.records);
  }
  std::size_t reached = 0;
  for (const auto& t : set.trials) {
    reached += t.reached_goal;
  }
  if (c.json_out) {
    out << json{{"trials", set.trials.size()},
                {"reached_goal", reached},
                {"records", set.records.size()},
                {"train_records", n_train},
                {"test_records", n_test}}
               .dump()
        << '\n';
  } else {
    out << "trials " << set.trials.size() << " reached " << reached << " records " << set.records.size();
    if (n_test) {
      out << " (train " << n_train << ", test " << n_test << ")";
    }
    out << '\n';
  }
}

// train

struct Train {
  std::string data;
  std::string out;
  std::optional<double> lambda;
  std::optional<double> ridge_scale;
};

void train(const Common& c, const Train& o, std::ostream& out)
{
  const auto p = c.profile();
  const auto records = intent::load_training_set(o.data);
  const auto labeled = intent::to_labeled(records);
  const auto model = intent::lda_fit(labeled, o.lambda ? o.lambda : p.intent.lambda,
                                     o.ridge_scale.value_or(p.intent.ridge_scale));
  intent::save_model(o.out, model);
  const auto e = intent::evaluate(model, labeled);
  if (c.json_out) {
    out << json{{"records", records.size()},
                {"classes", model.class_count()},
                {"lambda", model.lambda()},
                {"training_accuracy", e.accuracy()}}
               .dump()
        << '\n';
  } else {
    out << "records " << records.size() << " classes " << model.class_count() << " lambda " << model.lambda()
        << " training accuracy " << fixed(e.accuracy(), 4) << '\n';
  }
}

// eval

struct Eval {
  std::string model;
  std::string data;
};

void eval(const Common& c, const Eval& o, std::ostream& out)
{
  const auto model = intent::load_model(o.model);
  const auto labeled = intent::to_labeled(intent::load_training_set(o.data));
  const auto e = intent::evaluate(model, labeled);
  if (c.json_out) {
    out << json{{"n", e.n}, {"correct", e.correct}, {"accuracy", e.accuracy()}, {"confusion", e.confusion}}.dump()
        << '\n';
    return;
  }
  out << "accuracy " << fixed(e.accuracy(), 4) << " (" << e.correct << "/" << e.n << ")\n";
  out << "true\\pred";
  for (std::size_t j = 0; j < e.confusion.size(); ++j) {
    out << '\t' << goal_name(j);
  }
  out << '\n';
  for (std::size_t i = 0; i < e.confusion.size(); ++i) {
    out << goal_name(i);
    for (std::size_t n : e.confusion[i]) {
      out << '\t' << n;
    }
    out << '\n';
  }
}

// run

struct Run {
  std::string robot;
  std::string human;
  std::uint64_t seed{0};
  std::string out;
  std::string format;
  std::string model;
};

h::LogFormat format_for(const std::string& flag, const std::string& path)
{
  if (!flag.empty()) {
    const auto f = h::log_format_from_string(flag);
    if (!f) {
      throw UsageError("unknown log format '" + flag + "'");
    }
    return *f;
  }
  const auto ext = std::filesystem::path(path).extension();
  return ext == ".bin" || ext == ".nglog" ? h::LogFormat::Binary : h::LogFormat::Jsonl;
}

json metrics_line(const h::TrialMetrics& m) { return h::to_json(m); }

void print_metrics(std::ostream& out, const h::TrialMetrics& m)
{
  out << "outcome " << to_string(m.outcome) << " goal " << (m.final_goal ? goal_name(*m.final_goal) : "-")
      << " duration " << fixed(m.duration) << " s success " << (m.success ? "yes" : "no") << " winner "
      << to_string(m.winner) << " switches " << m.n_switches << " mean_agreement " << fixed(m.mean_agreement)
      << " mean_disagreement " << fixed(m.mean_disagreement) << '\n';
}

void run(const Common& c, const Run& o, std::ostream& out)
{
  h::TrialConfig cfg;
  cfg.profile = c.profile();
  const auto n = cfg.profile.goals.size();
  try {
    cfg.robot = h::parse_robot_assignment(o.robot, n);
    cfg.human = h::parse_human_assignment(o.human, n);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  cfg.seed = o.seed;
  const auto format = format_for(o.format, o.out);
  const auto log = h::run_trial(cfg, model_for(o.model, cfg.profile));
  const auto m = h::compute_metrics(log);
  if (!o.out.empty()) {
    h::save_log(o.out, log, format, &m);
  }
  if (c.json_out) {
    json j = metrics_line(m);
    j["robot"] = o.robot;
    j["human"] = o.human;
    j["seed"] = o.seed;
    j["digest"] = h::hex_digest(h::log_digest(log));
    out << j.dump() << '\n';
  } else {
    print_metrics(out, m);
  }
}

// batch

struct Batch {
  std::uint64_t seed{0};
  std::size_t trials{240};
  std::string pair;
  double soft_soft_prob{0.25};
  unsigned jobs{1};
  std::string csv;
  std::string summary;
  std::string model;
};

std::pair<h::RobotMode, Commitment> parse_pair(const std::string& s)
{
  const auto dash = s.find('-');
  if (dash == std::string::npos) {
    throw UsageError("role pair must look like robot-human, e.g. hard-soft");
  }
  const auto r = h::robot_mode_from_string(s.substr(0, dash));
  const auto hc = commitment_from_string(s.substr(dash + 1));
  if (!r || !hc) {
    throw UsageError("unknown role pair '" + s + "'");
  }
  return {*r, *hc};
}

void print_group(std::ostream& out, const std::string& name, const h::GroupSummary& g)
{
  const auto ci = h::wilson_interval(g.successes, g.completed());
  out << name << ": n " << g.n << " failed " << g.failed << " success " << fixed(g.rate(g.successes)) << " ["
      << fixed(ci.lo) << ", " << fixed(ci.hi) << "] robot_win " << fixed(g.rate(g.robot_wins)) << " human_win "
      << fixed(g.rate(g.human_wins)) << " abort " << fixed(g.rate(g.aborts)) << " switches "
      << fixed(g.mean_switches(), 2) << " mean_agreement " << fixed(g.mean_agreement(), 2) << " s mean_disagreement "
      << fixed(g.mean_disagreement(), 2) << " s\n";
}

void batch(const Common& c, const Batch& o, std::ostream& out)
{
  h::AssignmentGenerator gen;
  gen.n_trials = o.trials;
  gen.seed = o.seed;
  gen.soft_soft_prob = o.soft_soft_prob;
  if (!o.pair.empty()) {
    gen.fixed_pair = parse_pair(o.pair);
  }
  const auto p = c.profile();
  const auto configs = h::generate_configs(gen, p);
  h::BatchOptions opts;
  opts.jobs = o.jobs;
  opts.model = model_for(o.model, p);
  const auto result = h::run_batch(configs, opts);

  if (!o.csv.empty()) {
    auto f = open_out(o.csv);
    h::write_batch_csv(f, result);
  }
  const json summary = h::batch_summary_json(result);
  if (!o.summary.empty()) {
    open_out(o.summary) << summary.dump(2) << '\n';
  }
  if (c.json_out) {
    out << summary.dump() << '\n';
    return;
  }
  print_group(out, "overall", result.overall);
  for (const auto& [name, g] : result.by_pair) {
    print_group(out, name, g);
  }
}

// replay

struct Replay {
  std::string log;
};

int replay(const Common& c, const Replay& o, std::ostream& out, std::ostream& err)
{
  const auto stored = h::load_log(o.log);
  const auto m = h::compute_metrics(stored.log);
  const bool match = !stored.metrics || h::to_json(*stored.metrics) == h::to_json(m);
  if (c.json_out) {
    json j = metrics_line(m);
    j["recorded"] = stored.metrics.has_value();
    j["match"] = match;
    j["ticks"] = stored.log.ticks.size();
    out << j.dump() << '\n';
  } else {
    out << "ticks " << stored.log.ticks.size() << " robot " << h::format_assignment(stored.log.config.robot)
        << " human " << h::format_assignment(stored.log.config.human) << " seed " << stored.log.config.seed << '\n';
    print_metrics(out, m);
    if (stored.metrics) {
      out << "recorded metrics " << (match ? "match" : "DIFFER") << '\n';
    }
  }
  if (!match) {
    err << "recomputed metrics differ from the ones recorded in " << o.log << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

// serve

struct Serve {
  std::uint16_t port{8080};
  std::string address{"127.0.0.1"};
  double speed{1.0};
};

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

void serve(const Common& c, const Serve& o, std::ostream& out)
{
  bridge::ServerOptions opts;
  opts.port = o.port;
  opts.address = o.address;
  opts.speed = o.speed;
  opts.profile = c.profile();
  bridge::Server server(opts, h::default_intent_model);
  // Train before accepting connections so the first session starts at once.
  h::default_intent_model(opts.profile);
  server.start();
  if (c.json_out) {
    out << json{{"address", o.address}, {"port", server.port()}}.dump() << '\n';
  } else {
    out << "serving on ws://" << o.address << ':' << server.port() << "/ (health: http://" << o.address << ':'
        << server.port() << "/health)\n";
  }
  out.flush();
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_interrupted) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.stop();
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Simulated physical human-robot negotiation over a shared tray"};
  app.name("negosim");
  app.require_subcommand(1);
  Common common;
  app.add_option("--profile", common.profile_path,
                 std::string("Profile file (JSON); defaults to $") + h::kProfileEnvVar + " or built-in defaults");
  app.add_flag("--json", common.json_out, "Machine-readable output");

  GenData g;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate passive-robot training data");
  gen_cmd->add_option("--trials", g.trials, "Number of trials")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", g.seed, "Random seed (default: profile training seed)");
  gen_cmd->add_option("--out", g.out, "Output JSONL file")->required();
  gen_cmd->add_option("--train-trials", g.train_trials, "Trials with id below this go to --out, the rest to --test-out");
  gen_cmd->add_option("--test-out", g.test_out, "Held-out JSONL file");

  Train t;
  auto* train_cmd = app.add_subcommand("train", "Fit the intent classifier");
  train_cmd->add_option("--data", t.data, "Training JSONL file")->required();
  train_cmd->add_option("--out", t.out, "Model output file")->required();
  train_cmd->add_option("--lambda", t.lambda, "Explicit ridge added to the pooled covariance");
  train_cmd->add_option("--ridge-scale", t.ridge_scale, "Ridge as a fraction of the mean covariance diagonal");

  Eval e;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on labeled data");
  eval_cmd->add_option("--model", e.model, "Model file")->required();
  eval_cmd->add_option("--data", e.data, "Labeled JSONL file")->required();

  Run r;
  auto* run_cmd = app.add_subcommand("run", "Run one scripted trial");
  run_cmd->add_option("--robot", r.robot, "Robot role, e.g. hard:g1, soft:g2, kcg:g3, follower")->required();
  run_cmd->add_option("--human", r.human, "Scripted partner, e.g. soft:g2, hard:g3, follower")->required();
  run_cmd->add_option("--seed", r.seed, "Trial seed")->required();
  run_cmd->add_option("--out", r.out, "Trial log file");
  run_cmd->add_option("--format", r.format, "jsonl or binary (default: from the file extension)");
  run_cmd->add_option("--model", r.model, "Intent model file (default: trained from the profile)");

  Batch b;
  auto* batch_cmd = app.add_subcommand("batch", "Run a seeded batch of trials");
  batch_cmd->add_option("--seed", b.seed, "Batch seed")->required();
  batch_cmd->add_option("--trials", b.trials, "Number of trials")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--pair", b.pair, "Fix the role pair, e.g. hard-soft");
  batch_cmd->add_option("--soft-soft-prob", b.soft_soft_prob, "Probability of a soft-soft pair")
      ->check(CLI::Range(0.0, 1.0));
  batch_cmd->add_option("--jobs", b.jobs, "Worker threads")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--csv", b.csv, "Per-trial CSV output");
  batch_cmd->add_option("--summary", b.summary, "Aggregate JSON output");
  batch_cmd->add_option("--model", b.model, "Intent model file (default: trained from the profile)");

  Replay rp;
  auto* replay_cmd = app.add_subcommand("replay", "Recompute metrics from a trial log");
  replay_cmd->add_option("--log", rp.log, "Trial log (JSONL or binary)")->required();

  Serve s;
  auto* serve_cmd = app.add_subcommand("serve", "Serve live sessions over websocket");
  serve_cmd->add_option("--port", s.port, "TCP port (0 picks a free one)");
  serve_cmd->add_option("--address", s.address, "Bind address");
  serve_cmd->add_option("--speed", s.speed, "Simulated seconds per wall-clock second")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "error: " << ex.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*gen_cmd) {
      gen_data(common, g, out);
    } else if (*train_cmd) {
      train(common, t, out);
    } else if (*eval_cmd) {
      eval(common, e, out);
    } else if (*run_cmd) {
      run(common, r, out);
    } else if (*batch_cmd) {
      batch(common, b, out);
    } else if (*replay_cmd) {
      return replay(common, rp, out, err);
    } else if (*serve_cmd) {
      serve(common, s, out);
    }
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace negotiation::cli
