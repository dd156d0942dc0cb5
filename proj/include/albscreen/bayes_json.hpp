#pragma once

// JSON form of BayesKdeModel. Requires nlohmann/json on the include path.

#include <string>

#include <json.hpp>

#include "bayes.hpp"

namespace albscreen {

inline constexpr const char* model_schema = "albscreen.bayes-kde-model";
inline constexpr int model_schema_version = 1;

inline nlohmann::json model_to_json(const BayesKdeModel& model)
{
  nlohmann::json j;
  j["schema"] = model_schema;
  j["version"] = model_schema_version;
  j["kernel"] = model.kernel == KernelId::Hall ? "hall" : "gaussian";
  j["class_counts"] = {model.n0, model.n1};
  j["priors"] = {model.prior0, model.prior1};
  j["label_names"] = model.label_names;
  j["input_width"] = model.input_width;
  j["warnings"] = model.warnings;
  auto& feats = j["features"] = nlohmann::json::array();
  for (const auto& f : model.features)
    feats.push_back({{"index", f.feature},
                     {"bandwidth", {f.bandwidth0, f.bandwidth1}},
                     {"class0", f.class0},
                     {"class1", f.class1}});
  return j;
}

inline BayesKdeModel model_from_json(const nlohmann::json& j)
{
  if (j.value("schema", "") != model_schema)
    throw std::invalid_argument("model: not a " + std::string(model_schema) + " document");
  if (j.at("version").get<int>() != model_schema_version)
    throw std::invalid_argument("model: unsupported version " + j.at("version").dump());
  BayesKdeModel m;
  const auto kernel = j.at("kernel").get<std::string>();
  if (kernel != "hall" && kernel != "gaussian")
    throw std::invalid_argument("model: unknown kernel '" + kernel + "'");
  m.kernel = kernel == "hall" ? KernelId::Hall : KernelId::Gaussian;
  m.n0 = j.at("class_counts").at(0).get<std::size_t>();
  m.n1 = j.at("class_counts").at(1).get<std::size_t>();
  m.prior0 = j.at("priors").at(0).get<double>();
  m.prior1 = j.at("priors").at(1).get<double>();
  m.label_names = j.at("label_names").get<std::array<std::string, 2>>();
  m.input_width = j.at("input_width").get<std::size_t>();
  m.warnings = j.value("warnings", std::vector<std::string>{});
  for (const auto& f : j.at("features")) {
    ClassDensities cd;
    cd.feature = f.at("index").get<std::size_t>();
    cd.bandwidth0 = f.at("bandwidth").at(0).get<double>();
    cd.bandwidth1 = f.at("bandwidth").at(1).get<double>();
    cd.class0 = f.at("class0").get<std::vector<double>>();
    cd.class1 = f.at("class1").get<std::vector<double>>();
    if (cd.class0.size() < 2 || cd.class1.size() < 2 || !(cd.bandwidth0 > 0.0) || !(cd.bandwidth1 > 0.0))
      throw std::invalid_argument("model: feature " + std::to_string(cd.feature) + " is malformed");
    m.features.push_back(std::move(cd));
  }
  return m;
}

}  // namespace albscreen
