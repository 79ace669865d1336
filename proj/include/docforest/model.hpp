#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "docforest/encoder.hpp"
#include "docforest/error.hpp"
#include "docforest/features.hpp"
#include "docforest/loss.hpp"
#include "docforest/random.hpp"

namespace docforest {

struct ModelDims {
  std::size_t hidden = 128;
  std::size_t embedding = 64;
};

// Child-role and parent-role encoders plus the margin-loss hyperparameters.
struct MatchModel {
  static constexpr int kVersion = 1;

  int version = kVersion;
  FeatureConfig features;
  double s = 16.0;
  double m = 0.2;
  Encoder child_encoder;
  Encoder parent_encoder;

  std::size_t input_dim() const { return child_encoder.in_dim(); }
  std::size_t hidden_dim() const { return child_encoder.hidden_dim(); }
  std::size_t embedding_dim() const { return child_encoder.out_dim(); }

  // Throws ConfigError if the encoders disagree with each other or with the
  // feature configuration.
  void check() const {
    features.validate();
    check_margin_params(s, m);
    auto same = [](const Encoder& a, const Encoder& b) {
      return a.in_dim() == b.in_dim() && a.hidden_dim() == b.hidden_dim() && a.out_dim() == b.out_dim();
    };
    if (!same(child_encoder, parent_encoder)) throw ConfigError("child and parent encoders have different shapes");
    if (input_dim() != features.dim()) {
      throw ConfigError("model input dimension " + std::to_string(input_dim()) + " does not match feature dimension " +
                        std::to_string(features.dim()));
    }
    if (embedding_dim() == 0 || hidden_dim() == 0) throw ConfigError("model dimensions must be positive");
  }

  friend bool operator==(const MatchModel&, const MatchModel&) = default;
};

inline MatchModel make_model(const FeatureConfig& features, ModelDims dims, double s, double m, std::uint64_t seed) {
  features.validate();
  check_margin_params(s, m);
  if (dims.hidden == 0 || dims.embedding == 0) throw ConfigError("model dimensions must be positive");
  MatchModel model;
  model.features = features;
  model.s = s;
  model.m = m;
  model.child_encoder = Encoder(features.dim(), dims.hidden, dims.embedding);
  model.parent_encoder = Encoder(features.dim(), dims.hidden, dims.embedding);
  Rng rng(seed);
  model.child_encoder.initialize(rng);
  model.parent_encoder.initialize(rng);
  return model;
}

namespace detail {

inline nlohmann::json encoder_to_json(const Encoder& e) {
  return {{"w1", e.w1.data()}, {"b1", e.b1}, {"w2", e.w2.data()}, {"b2", e.b2}};
}

inline Encoder encoder_from_json(const nlohmann::json& j, std::size_t d, std::size_t h, std::size_t e) {
  Encoder enc(d, h, e);
  auto load = [&](const char* key, std::vector<double>& dst) {
    auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != dst.size()) {
      throw ConfigError(std::string("encoder array '") + key + "' has " + std::to_string(v.size()) +
                        " values, expected " + std::to_string(dst.size()));
    }
    dst = std::move(v);
  };
  load("w1", enc.w1.data());
  load("b1", enc.b1);
  load("w2", enc.w2.data());
  load("b2", enc.b2);
  return enc;
}

}  // namespace detail

inline nlohmann::json to_json(const MatchModel& m) {
  nlohmann::json j;
  j["version"] = m.version;
  j["dims"] = {{"D", m.input_dim()}, {"H", m.hidden_dim()}, {"E", m.embedding_dim()}};
  j["s"] = m.s;
  j["m"] = m.m;
  j["feature_config"] = to_json(m.features);
  j["child_encoder"] = detail::encoder_to_json(m.child_encoder);
  j["parent_encoder"] = detail::encoder_to_json(m.parent_encoder);
  return j;
}

inline MatchModel model_from_json(const nlohmann::json& j) {
  MatchModel m;
  try {
    m.version = j.at("version").get<int>();
    if (m.version != MatchModel::kVersion) throw ConfigError("unsupported model version " + std::to_string(m.version));
    const auto& dims = j.at("dims");
    auto d = dims.at("D").get<std::size_t>();
    auto h = dims.at("H").get<std::size_t>();
    auto e = dims.at("E").get<std::size_t>();
    m.s = j.at("s").get<double>();
    m.m = j.at("m").get<double>();
    m.features = feature_config_from_json(j.at("feature_config"));
    m.child_encoder = detail::encoder_from_json(j.at("child_encoder"), d, h, e);
    m.parent_encoder = detail::encoder_from_json(j.at("parent_encoder"), d, h, e);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("model file: ") + ex.what());
  }
  m.check();
  return m;
}

inline void save_model(const MatchModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(m).dump() << '\n';
}

inline MatchModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace docforest
