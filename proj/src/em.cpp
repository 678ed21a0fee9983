#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tbloop/estimation.hpp"
#include "tbloop/numerics.hpp"

namespace tbloop {

namespace {

constexpr double kWeightFloor = 1e-300;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

struct StepOutput {
  MixtureParams next;
  double loglik_before;
};

StepOutput em_iteration(const MixtureParams& params, const ObservationSeries& data) {
  const std::size_t k = params.k();
  const double sd = params.marginal_sd();
  const auto& w = params.weights();
  const auto& mu = params.means();

  // log w_j - log(sd sqrt(2 pi)); the shared constant cancels in the responsibilities.
  const double inv_two_var = 0.5 / (sd * sd);
  std::vector<double> log_c(k);
  for (std::size_t j = 0; j < k; ++j) log_c[j] = std::log(w[j]) - std::log(sd) - kLogSqrt2Pi;

  std::vector<double> resp_sum(k, 0.0);
  std::vector<double> weighted_y(k, 0.0);
  std::vector<double> terms(k);
  double loglik = 0.0;
  for (double y : data.values) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      const double d = y - mu[j];
      terms[j] = log_c[j] - d * d * inv_two_var;
      m = std::max(m, terms[j]);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      terms[j] = std::exp(terms[j] - m);
      total += terms[j];
    }
    loglik += m + std::log(total);
    const double inv_total = 1.0 / total;
    for (std::size_t j = 0; j < k; ++j) {
      const double r = terms[j] * inv_total;
      resp_sum[j] += r;
      weighted_y[j] += r * y;
    }
  }

  const double n = static_cast<double>(data.size());
  std::vector<double> new_w(k);
  std::vector<double> new_mu(k);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    new_w[j] = std::max(resp_sum[j] / n, kWeightFloor);
    total += new_w[j];
    // A component with no responsibility keeps its previous location.
    new_mu[j] = resp_sum[j] > 0.0 ? weighted_y[j] / resp_sum[j] : mu[j];
  }
  for (double& v : new_w) v /= total;
  return {MixtureParams::create(std::move(new_w), std::move(new_mu), params.component_sd()), loglik};
}

double l2_change(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return std::sqrt(s);
}

bool collapsed(const MixtureParams& p) {
  if (p.k() < 2) return false;
  const auto& m = p.means();
  const double scale = std::max({1.0, std::fabs(m.front()), std::fabs(m.back())});
  for (std::size_t j = 1; j < m.size(); ++j)
    if (m[j] - m[j - 1] <= 1e-8 * scale) return true;
  return false;
}

}  // namespace

MixtureParams default_init(const ObservationSeries& data, std::size_t k, double component_sd) {
  if (k == 0) throw std::invalid_argument("default_init: k must be positive");
  if (data.size() < k) throw std::invalid_argument("default_init: need at least k observations");
  const double ybar = data.mean();
  std::vector<double> weights(k, 1.0 / static_cast<double>(k));
  std::vector<double> means(k);
  // Evenly spaced over [ybar - 1, ybar + 1]; k = 1 sits at ybar.
  for (std::size_t j = 0; j < k; ++j)
    means[j] = k == 1 ? ybar : ybar - 1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(k - 1);
  return MixtureParams::create(std::move(weights), std::move(means), component_sd);
}

MixtureParams em_step(const MixtureParams& params, const ObservationSeries& data) {
  if (data.empty()) throw std::invalid_argument("em_step: empty data");
  return em_iteration(params, data).next;
}

EmResult em_fit(const ObservationSeries& data, std::size_t k, const EmConfig& config,
                const std::optional<MixtureParams>& init) {
  if (data.empty()) throw std::invalid_argument("em_fit: empty data");
  if (k == 0 || k > data.size()) throw std::invalid_argument("em_fit: k must satisfy 1 <= k <= n");
  if (!(config.tol > 0.0) || config.max_iter < 1) throw std::invalid_argument("em_fit: tol and max_iter must be positive");
  if (init && init->k() != k) throw std::invalid_argument("em_fit: init has the wrong number of components");

  MixtureParams current = init ? *init : default_init(data, k, config.component_sd);
  EmResult result;
  result.params = current;
  for (int iter = 1; iter <= config.max_iter; ++iter) {
    auto [next, loglik_before] = em_iteration(current, data);
    result.loglik_trace.push_back(loglik_before);
    if (config.record_trajectory) result.trajectory.push_back(next.weights());
    // Means are checked too: symmetric data pins the weights from the first step.
    const bool settled = l2_change(next.weights(), current.weights()) < config.tol &&
                         l2_change(next.means(), current.means()) < config.tol;
    current = std::move(next);
    result.n_iters = iter;
    if (settled) {
      result.converged = true;
      break;
    }
  }
  result.params = current;
  result.final_loglik = log_likelihood(current, data);
  result.loglik_trace.push_back(result.final_loglik);
  result.degenerate = collapsed(current);
  return result;
}

}  // namespace tbloop
