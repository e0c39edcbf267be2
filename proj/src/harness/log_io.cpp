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

#include "negotiation/harness/log_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "negotiation/core/errors.hpp"
#include "negotiation/intent/io.hpp"

namespace negotiation::harness {

using nlohmann::json;

namespace {

constexpr const char* kLogSchema = "negotiation.trial_log";
constexpr std::array<char, 5> kMagic{'N', 'G', 'L', 'O', 'G'};

json goal_json(const std::optional<GoalIndex>& g) { return g ? json(goal_name(*g)) : json(nullptr); }

std::optional<GoalIndex> goal_from(const json& j)
{
  if (j.is_null()) {
    return std::nullopt;
  }
  return intent::parse_goal_name(j.get<std::string>());
}

json triple(double a, double b, double c) { return json::array({a, b, c}); }

std::array<double, 3> triple_from(const json& j)
{
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json wrench_json(const PlanarWrench& w) { return triple(w.fx, w.fy, w.tau); }

PlanarWrench wrench_from(const json& j)
{
  const auto a = triple_from(j);
  return {a[0], a[1], a[2]};
}

json header_json(const TrialLog& log)
{
  return {{"type", "header"}, {"schema", kLogSchema}, {"version", kTrialLogVersion}, {"config", to_json(log.config)}};
}

TrialConfig config_from_header(const json& j)
{
  if (j.value("type", "") != "header" || j.value("schema", "") != kLogSchema) {
    throw ParseError("not a trial log");
  }
  if (j.at("version").get<int>() != kTrialLogVersion) {
    throw ParseError("unsupported trial log version");
  }
  return trial_config_from_json(j.at("config"));
}

/// Events, outcome and metrics: everything after the tick stream.
json trailer_json(const TrialLog& log, const TrialMetrics* metrics)
{
  json events = json::array();
  for (const auto& e : log.events) {
    events.push_back(to_json(e));
  }
  json j{{"events", events}, {"outcome", log.outcome ? to_json(*log.outcome) : json(nullptr)}};
  if (metrics) {
    j["metrics"] = to_json(*metrics);
  }
  return j;
}

void apply_trailer(const json& j, StoredLog& out)
{
  for (const auto& e : j.at("events")) {
    out.log.events.push_back(trial_event_from_json(e));
  }
  if (!j.at("outcome").is_null()) {
    out.log.outcome = trial_outcome_from_json(j.at("outcome"));
  }
  if (j.contains("metrics")) {
    out.metrics = trial_metrics_from_json(j.at("metrics"));
  }
}

// Binary primitives, little-endian regardless of host order.

void put_u64(std::ostream& out, std::uint64_t v)
{
  std::array<char, 8> b{};
  for (std::size_t i = 0; i < 8; ++i) {
    b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(b.data(), b.size());
}

std::uint64_t get_u64(std::istream& in)
{
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw ParseError("binary log truncated");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  }
  return v;
}

void put_f64(std::ostream& out, double d)
{
  std::uint64_t v = 0;
  std::memcpy(&v, &d, sizeof v);
  put_u64(out, v);
}

double get_f64(std::istream& in)
{
  const std::uint64_t v = get_u64(in);
  double d = 0.0;
  std::memcpy(&d, &v, sizeof d);
  return d;
}

void put_blob(std::ostream& out, const std::string& s)
{
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_blob(std::istream& in)
{
  const std::uint64_t n = get_u64(in);
  if (n > (std::uint64_t{1} << 32)) {
    throw ParseError("binary log blob too large");
  }
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) {
    throw ParseError("binary log truncated");
  }
  return s;
}

std::int8_t goal_code(const std::optional<GoalIndex>& g) { return g ? static_cast<std::int8_t>(*g) : -1; }

std::optional<GoalIndex> goal_decode(std::int8_t c)
{
  if (c < 0) {
    return std::nullopt;
  }
  return static_cast<GoalIndex>(c);
}

struct RealColumn {
  std::function<double(const TickRecord&)> get;
  std::function<void(TickRecord&, double)> set;
};

struct ByteColumn {
  std::function<std::int8_t(const TickRecord&)> get;
  std::function<void(TickRecord&, std::int8_t)> set;
};

#define NEGOTIATION_REAL(expr) \
  RealColumn{[](const TickRecord& r) { return r.expr; }, [](TickRecord& r, double v) { r.expr = v; }}

std::vector<RealColumn> real_columns()
{
  std::vector<RealColumn> c{
      NEGOTIATION_REAL(t),
      NEGOTIATION_REAL(pose.x),
      NEGOTIATION_REAL(pose.y),
      NEGOTIATION_REAL(pose.theta),
      NEGOTIATION_REAL(twist.vx),
      NEGOTIATION_REAL(twist.vy),
      NEGOTIATION_REAL(twist.wz),
      NEGOTIATION_REAL(f_human_raw.fx),
      NEGOTIATION_REAL(f_human_raw.fy),
      NEGOTIATION_REAL(f_human_raw.tau),
      NEGOTIATION_REAL(f_human.fx),
      NEGOTIATION_REAL(f_human.fy),
      NEGOTIATION_REAL(f_human.tau),
      NEGOTIATION_REAL(f_act.fx),
      NEGOTIATION_REAL(f_act.fy),
      NEGOTIATION_REAL(f_act.tau),
      NEGOTIATION_REAL(f_ref.fx),
      NEGOTIATION_REAL(f_ref.fy),
      NEGOTIATION_REAL(f_ref.tau),
      NEGOTIATION_REAL(stretch),
      NEGOTIATION_REAL(posteriors[0]),
      NEGOTIATION_REAL(posteriors[1]),
      NEGOTIATION_REAL(posteriors[2]),
      NEGOTIATION_REAL(f_mag),
  };
  for (std::size_t i = 0; i < intent::kFeatureCount; ++i) {
    c.push_back({[i](const TickRecord& r) { return r.features[i]; },
                 [i](TickRecord& r, double v) { r.features[i] = v; }});
  }
  return c;
}

#undef NEGOTIATION_REAL

std::vector<ByteColumn> byte_columns()
{
  return {
      {[](const TickRecord& r) { return static_cast<std::int8_t>(r.features_valid); },
       [](TickRecord& r, std::int8_t v) { r.features_valid = v != 0; }},
      {[](const TickRecord& r) { return goal_code(r.intent_raw); },
       [](TickRecord& r, std::int8_t v) { r.intent_raw = goal_decode(v); }},
      {[](const TickRecord& r) { return goal_code(r.intent); },
       [](TickRecord& r, std::int8_t v) { r.intent = goal_decode(v); }},
      {[](const TickRecord& r) { return goal_code(r.committed); },
       [](TickRecord& r, std::int8_t v) { r.committed = goal_decode(v); }},
      {[](const TickRecord& r) { return static_cast<std::int8_t>(r.hlc_tick); },
       [](TickRecord& r, std::int8_t v) { r.hlc_tick = v != 0; }},
      {[](const TickRecord& r) { return static_cast<std::int8_t>(r.machine); },
       [](TickRecord& r, std::int8_t v) { r.machine = static_cast<hlc::Machine>(v); }},
      {[](const TickRecord& r) { return static_cast<std::int8_t>(r.phase); },
       [](TickRecord& r, std::int8_t v) { r.phase = static_cast<hlc::Phase>(v); }},
      {[](const TickRecord& r) { return goal_code(r.active_goal); },
       [](TickRecord& r, std::int8_t v) { r.active_goal = goal_decode(v); }},
  };
}

json parse_line(const std::string& line, std::size_t line_no)
{
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(LogFormat f) { return f == LogFormat::Jsonl ? "jsonl" : "binary"; }

std::optional<LogFormat> log_format_from_string(std::string_view s)
{
  if (s == "jsonl") {
    return LogFormat::Jsonl;
  }
  if (s == "binary" || s == "bin") {
    return LogFormat::Binary;
  }
  return std::nullopt;
}

json to_json(const TrialOutcome& o)
{
  return {{"kind", std::string(to_string(o.kind))},
          {"goal", goal_json(o.goal)},
          {"duration", o.duration},
          {"final_pose", triple(o.final_pose.x, o.final_pose.y, o.final_pose.theta)}};
}

TrialOutcome trial_outcome_from_json(const json& j)
{
  try {
    TrialOutcome o;
    const auto kind = outcome_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) {
      throw ParseError("unknown outcome kind");
    }
    o.kind = *kind;
    o.goal = goal_from(j.at("goal"));
    o.duration = j.at("duration").get<double>();
    const auto p = triple_from(j.at("final_pose"));
    o.final_pose = {p[0], p[1], p[2]};
    return o;
  } catch (const json::exception& e) {
    throw ParseError(std::string("outcome: ") + e.what());
  }
}

json to_json(const TrialEvent& e)
{
  return {{"t", e.t}, {"kind", std::string(to_string(e.kind))}, {"goal", goal_json(e.goal)}};
}

TrialEvent trial_event_from_json(const json& j)
{
  try {
    const auto kind = event_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) {
      throw ParseError("unknown event kind");
    }
    return {j.at("t").get<double>(), *kind, goal_from(j.at("goal"))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("event: ") + e.what());
  }
}

json to_json(const TickRecord& r)
{
  return {{"t", r.t},
          {"pose", triple(r.pose.x, r.pose.y, r.pose.theta)},
          {"twist", triple(r.twist.vx, r.twist.vy, r.twist.wz)},
          {"f_human_raw", wrench_json(r.f_human_raw)},
          {"f_human", wrench_json(r.f_human)},
          {"f_act", wrench_json(r.f_act)},
          {"f_ref", wrench_json(r.f_ref)},
          {"stretch", r.stretch},
          {"features", r.features_valid ? json(r.features) : json(nullptr)},
          {"intent_raw", goal_json(r.intent_raw)},
          {"intent", goal_json(r.intent)},
          {"posteriors", r.posteriors},
          {"committed", goal_json(r.committed)},
          {"hlc_tick", r.hlc_tick},
          {"machine", std::string(hlc::to_string(r.machine))},
          {"phase", std::string(hlc::to_string(r.phase))},
          {"active_goal", goal_json(r.active_goal)},
          {"f_mag", r.f_mag}};
}

TickRecord tick_record_from_json(const json& j)
{
  try {
    TickRecord r;
    r.t = j.at("t").get<double>();
    const auto p = triple_from(j.at("pose"));
    r.pose = {p[0], p[1], p[2]};
    const auto v = triple_from(j.at("twist"));
    r.twist = {v[0], v[1], v[2]};
    r.f_human_raw = wrench_from(j.at("f_human_raw"));
    r.f_human = wrench_from(j.at("f_human"));
    r.f_act = wrench_from(j.at("f_act"));
    r.f_ref = wrench_from(j.at("f_ref"));
    r.stretch = j.at("stretch").get<double>();
    const auto& f = j.at("features");
    r.features_valid = !f.is_null();
    if (r.features_valid) {
      if (f.size() != intent::kFeatureCount) {
        throw ParseError("tick record has the wrong feature count");
      }
      for (std::size_t i = 0; i < intent::kFeatureCount; ++i) {
        r.features[i] = f[i].get<double>();
      }
    }
    r.intent_raw = goal_from(j.at("intent_raw"));
    r.intent = goal_from(j.at("intent"));
    r.posteriors = triple_from(j.at("posteriors"));
    r.committed = goal_from(j.at("committed"));
    r.hlc_tick = j.at("hlc_tick").get<bool>();
    const auto m = hlc::machine_from_string(j.at("machine").get<std::string>());
    const auto ph = hlc::phase_from_string(j.at("phase").get<std::string>());
    if (!m || !ph) {
      throw ParseError("tick record has an unknown machine or phase");
    }
    r.machine = *m;
    r.phase = *ph;
    r.active_goal = goal_from(j.at("active_goal"));
    r.f_mag = j.at("f_mag").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("tick record: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const TrialLog& log, const TrialMetrics* metrics)
{
  out << header_json(log).dump() << '\n';
  for (const auto& r : log.ticks) {
    json j = to_json(r);
    j["type"] = "tick";
    out << j.dump() << '\n';
  }
  for (const auto& e : log.events) {
    json j = to_json(e);
    j["type"] = "event";
    out << j.dump() << '\n';
  }
  if (log.outcome) {
    json j = to_json(*log.outcome);
    j["type"] = "outcome";
    out << j.dump() << '\n';
  }
  if (metrics) {
    json j = to_json(*metrics);
    j["type"] = "metrics";
    out << j.dump() << '\n';
  }
}

StoredLog read_jsonl(std::istream& in)
{
  StoredLog out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const json j = parse_line(line, line_no);
    if (!have_header) {
      out.log.config = config_from_header(j);
      have_header = true;
      continue;
    }
    const std::string type = j.value("type", "");
    if (type == "tick") {
      out.log.ticks.push_back(tick_record_from_json(j));
    } else if (type == "event") {
      out.log.events.push_back(trial_event_from_json(j));
    } else if (type == "outcome") {
      out.log.outcome = trial_outcome_from_json(j);
    } else if (type == "metrics") {
      out.metrics = trial_metrics_from_json(j);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown record type '" + type + "'");
    }
  }
  if (!have_header) {
    throw ParseError("empty trial log");
  }
  return out;
}

void write_binary(std::ostream& out, const TrialLog& log, const TrialMetrics* metrics)
{
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, static_cast<std::uint64_t>(kTrialLogVersion));
  put_blob(out, header_json(log).dump());
  put_u64(out, log.ticks.size());
  for (const auto& col : real_columns()) {
    for (const auto& r : log.ticks) {
      put_f64(out, col.get(r));
    }
  }
  for (const auto& col : byte_columns()) {
    std::string bytes(log.ticks.size(), '\0');
    for (std::size_t i = 0; i < log.ticks.size(); ++i) {
      bytes[i] = static_cast<char>(col.get(log.ticks[i]));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  put_blob(out, trailer_json(log, metrics).dump());
}

StoredLog read_binary(std::istream& in)
{
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError("not a binary trial log");
  }
  if (get_u64(in) != static_cast<std::uint64_t>(kTrialLogVersion)) {
    throw ParseError("unsupported trial log version");
  }
  StoredLog out;
  try {
    out.log.config = config_from_header(json::parse(get_blob(in)));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("binary log header: ") + e.what());
  }
  const std::uint64_t n = get_u64(in);
  if (n > (std::uint64_t{1} << 32)) {
    throw ParseError("binary log tick count is implausible");
  }
  out.log.ticks.resize(n);
  for (const auto& col : real_columns()) {
    for (auto& r : out.log.ticks) {
      col.set(r, get_f64(in));
    }
  }
  for (const auto& col : byte_columns()) {
    std::string bytes(n, '\0');
    if (!in.read(bytes.data(), static_cast<std::streamsize>(n))) {
      throw ParseError("binary log truncated");
    }
    for (std::size_t i = 0; i < n; ++i) {
      col.set(out.log.ticks[i], static_cast<std::int8_t>(bytes[i]));
    }
  }
  for (auto& r : out.log.ticks) {
    if (!r.features_valid) {
      r.features = {};
    }
  }
  try {
    apply_trailer(json::parse(get_blob(in)), out);
  } catch (const json::exception& e) {
    throw ParseError(std::string("binary log trailer: ") + e.what());
  }
  return out;
}

void save_log(const std::filesystem::path& path, const TrialLog& log, LogFormat format, const TrialMetrics* metrics)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  if (format == LogFormat::Jsonl) {
    write_jsonl(out, log, metrics);
  } else {
    write_binary(out, log, metrics);
  }
  if (!out) {
    throw Error("write failed: " + path.string());
  }
}

StoredLog load_log(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read " + path.string());
  }
  std::array<char, 5> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == static_cast<std::streamsize>(head.size()) && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary(in) : read_jsonl(in);
}

std::uint64_t log_digest(const TrialLog& log)
{
  std::ostringstream s;
  write_jsonl(s, log);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::uint64_t d)
{
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << d;
  return s.str();
}

}  // namespace negotiation::harness
