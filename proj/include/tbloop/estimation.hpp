#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tbloop/mixture.hpp"
#include "tbloop/rng.hpp"

namespace tbloop {

struct EmConfig {
  double tol = 1e-6;      // stop once weight and mean steps both have L2 norm < tol
  int max_iter = 500;
  double component_sd = 0.0;  // ignored when an explicit init is supplied
  bool record_trajectory = false;
};

struct EmResult {
  MixtureParams params;
  int n_iters = 0;
  bool converged = false;
  double final_loglik = 0.0;
  // True when components collapsed onto a common mean (e.g. constant data).
  bool degenerate = false;
  // loglik_trace[i] is the log-likelihood of the iterate after i steps;
  // entry 0 is the initial point.
  std::vector<double> loglik_trace;
  // Weight vector after each step, only when record_trajectory is set.
  std::vector<std::vector<double>> trajectory;
};

// Equal weights; means evenly spaced over [Ybar - 1, Ybar + 1] (Ybar when k = 1).
MixtureParams default_init(const ObservationSeries& data, std::size_t k, double component_sd = 0.0);

// One E-step followed by one M-step.
MixtureParams em_step(const MixtureParams& params, const ObservationSeries& data);

// Maximum-likelihood fit of a k-component mixture with known spread.
// Throws std::invalid_argument when data is empty, k == 0 or k > n, or when
// init has the wrong component count.
EmResult em_fit(const ObservationSeries& data, std::size_t k, const EmConfig& config = {},
                const std::optional<MixtureParams>& init = std::nullopt);

struct GibbsPrior {
  double mu0 = 0.0;
  double sigma0_sq = 1e4;
  double dirichlet_concentration = 1.0;
};

struct GibbsConfig {
  int n_iter = 2000;
  int burn_in = 500;
  GibbsPrior prior;
  double component_sd = 0.0;
};

struct GibbsDraw {
  std::vector<double> weights;
  std::vector<double> means;  // sorted ascending, weights permuted alongside
};

struct GibbsResult {
  std::vector<GibbsDraw> draws;
  int n_burn_in = 0;
  GibbsPrior prior;
  // Number of (sweep, component) pairs whose mean was drawn from the prior
  // because no observation was allocated to it.
  std::size_t empty_component_updates = 0;
};

// Data-augmentation Gibbs sampler: latent allocations, Dirichlet weights,
// conjugate normal means. Retains sweeps burn_in+1..n_iter.
GibbsResult gibbs_fit(const ObservationSeries& data, std::size_t k, const GibbsConfig& config, RngStream rng);

}  // namespace tbloop
