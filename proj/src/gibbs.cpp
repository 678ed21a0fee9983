#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tbloop/estimation.hpp"
#include "tbloop/numerics.hpp"

namespace tbloop {

namespace {

GibbsDraw sorted_draw(const std::vector<double>& weights, const std::vector<double>& means) {
  std::vector<std::size_t> order(means.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });
  GibbsDraw d;
  for (std::size_t i : order) {
    d.weights.push_back(weights[i]);
    d.means.push_back(means[i]);
  }
  return d;
}

}  // namespace

GibbsResult gibbs_fit(const ObservationSeries& data, std::size_t k, const GibbsConfig& config, RngStream rng) {
  if (data.empty()) throw std::invalid_argument("gibbs_fit: empty data");
  if (k == 0 || k > data.size()) throw std::invalid_argument("gibbs_fit: k must satisfy 1 <= k <= n");
  if (config.n_iter < 1 || config.burn_in < 0 || config.burn_in >= config.n_iter)
    throw std::invalid_argument("gibbs_fit: require 0 <= burn_in < n_iter");
  const GibbsPrior& prior = config.prior;
  if (!(prior.sigma0_sq > 0.0) || !(prior.dirichlet_concentration > 0.0))
    throw std::invalid_argument("gibbs_fit: prior variance and concentration must be positive");

  const MixtureParams start = default_init(data, k, config.component_sd);
  std::vector<double> weights = start.weights();
  std::vector<double> means = start.means();
  const double sd = start.marginal_sd();
  const double noise_precision = 1.0 / (sd * sd);
  const double prior_precision = 1.0 / prior.sigma0_sq;

  GibbsResult result;
  result.n_burn_in = config.burn_in;
  result.prior = prior;
  result.draws.reserve(static_cast<std::size_t>(config.n_iter - config.burn_in));

  std::vector<double> log_terms(k);
  std::vector<double> probs(k);
  std::vector<double> counts(k);
  std::vector<double> sums(k);
  std::vector<double> concentration(k);

  for (int sweep = 1; sweep <= config.n_iter; ++sweep) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(sums.begin(), sums.end(), 0.0);

    // Allocations Z_i given current weights and means.
    for (double y : data.values) {
      std::size_t z = 0;
      if (k > 1) {
        for (std::size_t j = 0; j < k; ++j) log_terms[j] = std::log(weights[j]) + normal_log_pdf(y, means[j], sd);
        const double top = *std::max_element(log_terms.begin(), log_terms.end());
        for (std::size_t j = 0; j < k; ++j) probs[j] = std::exp(log_terms[j] - top);
        z = draw_categorical(rng, probs);
      }
      counts[z] += 1.0;
      sums[z] += y;
    }

    for (std::size_t j = 0; j < k; ++j) concentration[j] = prior.dirichlet_concentration + counts[j];
    weights = k > 1 ? draw_dirichlet(rng, concentration) : std::vector<double>{1.0};

    for (std::size_t j = 0; j < k; ++j) {
      // With no allocated points this reduces to a draw from the prior.
      if (counts[j] == 0.0) ++result.empty_component_updates;
      const double precision = prior_precision + counts[j] * noise_precision;
      const double centre = (prior.mu0 * prior_precision + sums[j] * noise_precision) / precision;
      means[j] = draw_normal(rng, centre, 1.0 / std::sqrt(precision));
    }

    if (sweep > config.burn_in) result.draws.push_back(sorted_draw(weights, means));
  }
  return result;
}

}  // namespace tbloop
