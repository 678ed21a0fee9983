#include "tbloop/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tbloop/numerics.hpp"

namespace tbloop {

double ObservationSeries::mean() const {
  if (values.empty()) throw std::domain_error("ObservationSeries::mean: empty series");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

ObservationSeries ObservationSeries::prefix(std::size_t n) const {
  n = std::min(n, values.size());
  ObservationSeries out;
  out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
  if (labels) out.labels = std::vector<double>(labels->begin(), labels->begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

ObservationSeries ObservationSeries::appended(double y) const {
  ObservationSeries out = *this;
  out.values.push_back(y);
  if (out.labels) out.labels->push_back(out.labels->empty() ? 1.0 : out.labels->back() + 1.0);
  return out;
}

double marginal_sd_for(double component_sd) { return std::sqrt(component_sd * component_sd + 1.0); }

MixtureParams MixtureParams::create(std::vector<double> weights, std::vector<double> means, double component_sd) {
  if (weights.empty() || weights.size() != means.size())
    throw std::invalid_argument("MixtureParams: weights and means must be nonempty and of equal length");
  if (!(component_sd >= 0.0) || !std::isfinite(component_sd))
    throw std::invalid_argument("MixtureParams: component_sd must be finite and nonnegative");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("MixtureParams: weights must be positive");
    if (!std::isfinite(means[i])) throw std::invalid_argument("MixtureParams: means must be finite");
  }

  std::vector<std::size_t> order(means.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (means[a] != means[b]) return means[a] < means[b];
    return weights[a] < weights[b];
  });
  // Summed in canonical order so permuted inputs normalize identically.
  double total = 0.0;
  for (std::size_t i : order) total += weights[i];
  if (std::fabs(total - 1.0) > 1e-8) throw std::invalid_argument("MixtureParams: weights must sum to 1");

  MixtureParams p;
  p.weights_.clear();
  p.means_.clear();
  p.weights_.reserve(order.size());
  p.means_.reserve(order.size());
  for (std::size_t i : order) {
    p.weights_.push_back(weights[i] / total);
    p.means_.push_back(means[i]);
  }
  p.component_sd_ = component_sd;
  p.marginal_sd_ = marginal_sd_for(component_sd);
  return p;
}

double marginal_log_density(const MixtureParams& params, double y) {
  const std::size_t k = params.k();
  if (k == 1) return normal_log_pdf(y, params.means()[0], params.marginal_sd());
  // Small fixed buffer avoids a heap allocation per point for typical K.
  constexpr std::size_t kInline = 16;
  double buf[kInline];
  std::vector<double> heap;
  double* terms = buf;
  if (k > kInline) {
    heap.resize(k);
    terms = heap.data();
  }
  for (std::size_t j = 0; j < k; ++j)
    terms[j] = std::log(params.weights()[j]) + normal_log_pdf(y, params.means()[j], params.marginal_sd());
  return log_sum_exp(std::span<const double>(terms, k));
}

double log_likelihood(const MixtureParams& params, std::span<const double> data) {
  if (data.empty()) throw std::domain_error("log_likelihood: empty data");
  double total = 0.0;
  for (double y : data) total += marginal_log_density(params, y);
  return total;
}

double log_likelihood(const MixtureParams& params, const ObservationSeries& data) {
  return log_likelihood(params, std::span<const double>(data.values));
}

SimulatedSeries simulate_with_components(const MixtureParams& params, std::size_t n, RngStream& rng) {
  SimulatedSeries out;
  out.series.values.reserve(n);
  out.components.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = params.k() == 1 ? 0 : draw_categorical(rng, params.weights());
    out.components.push_back(c);
    out.series.values.push_back(draw_normal(rng, params.means()[c], params.marginal_sd()));
  }
  return out;
}

ObservationSeries simulate(const MixtureParams& params, std::size_t n, RngStream& rng) {
  return simulate_with_components(params, n, rng).series;
}

}  // namespace tbloop
