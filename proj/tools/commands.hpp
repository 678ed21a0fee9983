#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "tbloop/im_binomial.hpp"
#include "tbloop/mixture.hpp"

// Subcommand bodies, kept separate from argument parsing so tests can call
// them directly. Each writes into config.output_dir and returns the paths
// it wrote.
namespace tbloop::cli {

// K=3, means (-2, 2, 5), weights (0.3, 0.5, 0.2).
MixtureParams creation_truth(double sigma = 0.0);

std::vector<std::string> cmd_simulate(const RunConfig& config, const MixtureParams& truth, std::size_t n,
                                      const std::string& out_name = "observations.csv", bool emit_components = false);

// Writes <prefix>.jsonl (one event per line after a metadata line) and
// <prefix>_summary.json.
std::vector<std::string> cmd_tb_run(const RunConfig& config, const std::string& initial_csv,
                                    const std::string& stream_csv, const std::string& prefix = "transcript");

// Writes <prefix>.csv (n, method, k_hat, score_k1..) and <prefix>.json.
std::vector<std::string> cmd_select_k(const RunConfig& config, const std::string& data_csv,
                                      const std::string& prefix = "selection");

struct FigCreationOptions {
  std::vector<std::size_t> checkpoints;  // empty: 20, 40, ..., 400
  std::size_t k_max = 6;                 // used when config.k_max == 0
};

std::vector<std::size_t> default_creation_checkpoints();

// Columns n, k_bic, k_cv from one seeded stream of the K=3 truth.
std::vector<std::string> cmd_fig_creation(const RunConfig& config, const FigCreationOptions& options = {},
                                          const std::string& out_name = "fig_creation.csv");

struct FigTwoMeansOptions {
  std::size_t n_initial = 10;
  std::size_t grid_points = 1001;
  double y_lo = -5.0;
  double y_hi = 5.0;
};

// Columns y, decision, tail_prob, phi1, phi2, pi1 over the y grid.
std::vector<std::string> cmd_fig_two_means(const RunConfig& config, const FigTwoMeansOptions& options = {},
                                           const std::string& out_name = "fig_two_means.csv");

enum class ImQuery { Curve, PlInterval, CpInterval };
ImQuery parse_im_query(const std::string& s);

// Curve: CSV (theta, plausibility). Intervals: JSON {lo, hi, alpha, method}.
std::vector<std::string> cmd_im(const RunConfig& config, int n, int x, ImQuery query, double alpha,
                                std::size_t grid_points = 1001, const std::string& out_name = "");

}  // namespace tbloop::cli
