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

#include "negotiation/intent/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "negotiation/core/errors.hpp"

namespace negotiation::intent {

using nlohmann::json;

namespace {

constexpr const char* kModelSchema = "negotiation.lda_model";
constexpr int kModelFileVersion = 1;

json matrix_to_json(const Eigen::MatrixXd& m)
{
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what)
{
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ParseError(std::string("model field '") + what + "' is not a matrix");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(std::string("model field '") + what + "' is ragged");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

}  // namespace

GoalIndex parse_goal_name(const std::string& s)
{
  if (s.size() < 2 || (s[0] != 'g' && s[0] != 'G')) {
    throw ParseError("bad goal name '" + s + "'");
  }
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(s.substr(1), &used);
  } catch (const std::exception&) {
    throw ParseError("bad goal name '" + s + "'");
  }
  if (used != s.size() - 1 || k < 1) {
    throw ParseError("bad goal name '" + s + "'");
  }
  return static_cast<GoalIndex>(k - 1);
}

json to_json(const TrainingRecord& r)
{
  return json{{"t", r.t}, {"features", r.features}, {"label", goal_name(r.label)}, {"trial_id", r.trial_id}};
}

TrainingRecord training_record_from_json(const json& j)
{
  TrainingRecord r;
  try {
    r.t = j.at("t").get<double>();
    const auto& f = j.at("features");
    if (!f.is_array() || f.size() != kFeatureCount) {
      throw ParseError("training record needs exactly 13 features");
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      r.features[i] = f[i].get<double>();
    }
    r.label = parse_goal_name(j.at("label").get<std::string>());
    r.trial_id = j.at("trial_id").get<std::uint32_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed training record: ") + e.what());
  }
  return r;
}

void write_training_jsonl(std::ostream& out, const std::vector<TrainingRecord>& records)
{
  for (const auto& r : records) {
    out << to_json(r).dump() << '\n';
  }
}

std::vector<TrainingRecord> read_training_jsonl(std::istream& in)
{
  std::vector<TrainingRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    try {
      records.push_back(training_record_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void save_training_set(const std::filesystem::path& path, const std::vector<TrainingRecord>& records)
{
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  write_training_jsonl(out, records);
}

std::vector<TrainingRecord> load_training_set(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path.string());
  }
  return read_training_jsonl(in);
}

std::vector<LabeledFeatures> to_labeled(const std::vector<TrainingRecord>& records)
{
  std::vector<LabeledFeatures> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.features, r.label});
  }
  return out;
}

json to_json(const LdaModel& model)
{
  json classes = json::array();
  for (GoalIndex c : model.classes()) {
    classes.push_back(goal_name(c));
  }
  json priors = json::array();
  for (Eigen::Index i = 0; i < model.priors().size(); ++i) {
    priors.push_back(model.priors()(i));
  }
  json j{
      {"schema", kModelSchema},
      {"version", kModelFileVersion},
      {"feature_schema_version", model.feature_schema_version()},
      {"classes", classes},
      {"means", matrix_to_json(model.means())},
      {"cov_inverse", matrix_to_json(model.cov_inverse())},
      {"priors", priors},
      {"lambda", model.lambda()},
  };
  if (model.dimension() == kFeatureCount) {
    j["feature_names"] = feature_names();
  }
  if (model.covariance().size() > 0) {
    j["covariance"] = matrix_to_json(model.covariance());
  }
  return j;
}

LdaModel lda_model_from_json(const json& j)
{
  try {
    if (j.at("schema").get<std::string>() != kModelSchema) {
      throw ParseError("not an LDA model file");
    }
    if (j.at("version").get<int>() != kModelFileVersion) {
      throw ParseError("unsupported model file version");
    }
    std::vector<GoalIndex> classes;
    for (const auto& c : j.at("classes")) {
      classes.push_back(parse_goal_name(c.get<std::string>()));
    }
    const auto& pj = j.at("priors");
    Eigen::VectorXd priors(static_cast<Eigen::Index>(pj.size()));
    for (std::size_t i = 0; i < pj.size(); ++i) {
      priors(static_cast<Eigen::Index>(i)) = pj[i].get<double>();
    }
    Eigen::MatrixXd cov;
    if (j.contains("covariance")) {
      cov = matrix_from_json(j.at("covariance"), "covariance");
    }
    return LdaModel(std::move(classes), matrix_from_json(j.at("means"), "means"), std::move(cov),
                    matrix_from_json(j.at("cov_inverse"), "cov_inverse"), std::move(priors),
                    j.at("lambda").get<double>(), j.at("feature_schema_version").get<int>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const LdaModel& model)
{
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << to_json(model).dump(2) << '\n';
}

LdaModel load_model(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return lda_model_from_json(j);
}

}  // namespace negotiation::intent
