#include "run_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "tbloop/rng.hpp"

namespace tbloop::cli {

using nlohmann::json;

void to_json(json& j, const RunConfig& c) {
  j = json{{"seed", c.seed},
           {"sigma", c.sigma},
           {"alpha", c.alpha},
           {"k_max", c.k_max},
           {"method", to_string(c.method)},
           {"cv_reps", c.cv_reps},
           {"train_fraction", c.train_fraction},
           {"two_sided", c.two_sided},
           {"penalty_variant", to_string(c.penalty_variant)},
           {"output_dir", c.output_dir}};
}

void from_json(const json& j, RunConfig& c) {
  static const std::set<std::string> known = {"seed",      "sigma",          "alpha",           "k_max",
                                              "method",    "cv_reps",        "train_fraction",  "two_sided",
                                              "penalty_variant", "output_dir"};
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
  if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
  if (j.contains("k_max")) c.k_max = j["k_max"].get<std::size_t>();
  if (j.contains("method")) c.method = parse_selection_method(j["method"].get<std::string>());
  if (j.contains("cv_reps")) c.cv_reps = j["cv_reps"].get<int>();
  if (j.contains("train_fraction")) c.train_fraction = j["train_fraction"].get<double>();
  if (j.contains("two_sided")) c.two_sided = j["two_sided"].get<bool>();
  if (j.contains("penalty_variant")) c.penalty_variant = parse_penalty_variant(j["penalty_variant"].get<std::string>());
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  RunConfig c;
  from_json(json::parse(in), c);
  return c;
}

void validate(const RunConfig& c) {
  if (!(c.sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (c.cv_reps < 1) throw std::invalid_argument("cv_reps must be positive");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) throw std::invalid_argument("train_fraction must lie in (0, 1)");
}

std::string config_hash(const RunConfig& c) {
  json j = c;
  j.erase("output_dir");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

std::string provenance(const RunConfig& c) {
  return "config_hash=" + config_hash(c) + " seed=" + std::to_string(c.seed);
}

TbConfig to_tb_config(const RunConfig& c) {
  TbConfig t;
  t.alpha = c.alpha;
  t.sigma = c.sigma;
  t.k_max = c.k_max;
  t.method = c.method;
  t.cv_reps = c.cv_reps;
  t.train_fraction = c.train_fraction;
  t.two_sided = c.two_sided;
  t.penalty = c.penalty_variant;
  t.seed = c.seed;
  return t;
}

}  // namespace tbloop::cli
