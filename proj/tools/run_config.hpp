#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "tbloop/creation.hpp"
#include "tbloop/tb_loop.hpp"

namespace tbloop::cli {

inline constexpr const char* kOutputDirEnv = "TBLOOP_OUTPUT_DIR";

struct RunConfig {
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double alpha = 0.05;
  std::size_t k_max = 0;  // 0: min(10, n/2)
  SelectionMethod method = SelectionMethod::Bic;
  int cv_reps = 50;
  double train_fraction = 0.8;
  bool two_sided = false;
  PenaltyVariant penalty_variant = PenaltyVariant::PaperKLogN;
  std::string output_dir = ".";
};

void to_json(nlohmann::json& j, const RunConfig& c);
// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config_file(const std::string& path);
// Throws std::invalid_argument when a field is out of range.
void validate(const RunConfig& c);

// Hash of the canonical JSON form, excluding output_dir, as 16 hex digits.
std::string config_hash(const RunConfig& c);
// "config_hash=<hex> seed=<n>", the provenance line every output carries.
std::string provenance(const RunConfig& c);

TbConfig to_tb_config(const RunConfig& c);

}  // namespace tbloop::cli
