#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tbloop/rng.hpp"

namespace tbloop {

// Observations Y_1..Y_n in arrival order; `labels` optionally carries the
// time index of each value.
struct ObservationSeries {
  std::vector<double> values;
  std::optional<std::vector<double>> labels;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double mean() const;
  // First n values (labels truncated alongside).
  ObservationSeries prefix(std::size_t n) const;
  // Copy with `y` appended; labels, if present, continue with the next index.
  ObservationSeries appended(double y) const;

  friend bool operator==(const ObservationSeries&, const ObservationSeries&) = default;
};

// K-component normal mixture for an observation: Y ~ sum_k w_k N(mean_k, s^2)
// with s^2 = component_sd^2 + 1. Means are kept sorted ascending (ties
// allowed for degenerate fits) and weights are strictly positive and
// renormalized to sum to one.
class MixtureParams {
 public:
  // Single standard component: weight 1, mean 0, component_sd 0.
  MixtureParams() = default;

  // Sorts (mean, weight) pairs by mean. Throws std::invalid_argument on
  // size mismatch, nonpositive weights, weights far from the simplex, or
  // negative component_sd.
  static MixtureParams create(std::vector<double> weights, std::vector<double> means, double component_sd = 0.0);

  std::size_t k() const { return means_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& means() const { return means_; }
  double component_sd() const { return component_sd_; }
  double marginal_sd() const { return marginal_sd_; }

  friend bool operator==(const MixtureParams&, const MixtureParams&) = default;

 private:
  std::vector<double> weights_{1.0};
  std::vector<double> means_{0.0};
  double component_sd_ = 0.0;
  double marginal_sd_ = 1.0;
};

double marginal_sd_for(double component_sd);

// log sum_k w_k N(y; mean_k, marginal_sd^2)
double marginal_log_density(const MixtureParams& params, double y);

// Sum of marginal_log_density over the series. Empty data is a domain error.
double log_likelihood(const MixtureParams& params, std::span<const double> data);
double log_likelihood(const MixtureParams& params, const ObservationSeries& data);

struct SimulatedSeries {
  ObservationSeries series;
  std::vector<std::size_t> components;
};

// Draws a component index from the weights, then a normal around that
// component's mean with sd = marginal_sd.
SimulatedSeries simulate_with_components(const MixtureParams& params, std::size_t n, RngStream& rng);
ObservationSeries simulate(const MixtureParams& params, std::size_t n, RngStream& rng);

}  // namespace tbloop
