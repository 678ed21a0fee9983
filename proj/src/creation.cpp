#include "tbloop/creation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tbloop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t argmin_smallest_k(const std::vector<KScore>& per_k) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < per_k.size(); ++i)
    if (per_k[i].score < per_k[best].score) best = i;
  return per_k[best].k;
}

std::size_t resolve_k_max(const SelectionConfig& config, std::size_t n) {
  const std::size_t k_max = config.k_max == 0 ? default_k_max(n) : config.k_max;
  if (k_max > n) throw std::invalid_argument("model selection: k_max exceeds the sample size");
  return k_max;
}

ObservationSeries gather(const ObservationSeries& data, std::span<const std::size_t> idx) {
  ObservationSeries out;
  out.values.reserve(idx.size());
  for (std::size_t i : idx) out.values.push_back(data.values[i]);
  return out;
}

}  // namespace

std::string to_string(SelectionMethod m) { return m == SelectionMethod::Bic ? "BIC" : "CV"; }

std::string to_string(PenaltyVariant p) { return p == PenaltyVariant::PaperKLogN ? "PAPER_K_LOG_N" : "PARAM_COUNT"; }

SelectionMethod parse_selection_method(const std::string& s) {
  if (s == "BIC" || s == "bic") return SelectionMethod::Bic;
  if (s == "CV" || s == "cv") return SelectionMethod::Cv;
  throw std::invalid_argument("unknown selection method '" + s + "'");
}

PenaltyVariant parse_penalty_variant(const std::string& s) {
  if (s == "PAPER_K_LOG_N") return PenaltyVariant::PaperKLogN;
  if (s == "PARAM_COUNT") return PenaltyVariant::ParamCount;
  throw std::invalid_argument("unknown penalty variant '" + s + "'");
}

std::size_t default_k_max(std::size_t n) { return std::max<std::size_t>(1, std::min<std::size_t>(10, n / 2)); }

double bic_penalty(std::size_t k, std::size_t n, PenaltyVariant variant) {
  const double params = variant == PenaltyVariant::PaperKLogN ? static_cast<double>(k) : 2.0 * static_cast<double>(k) - 1.0;
  return params * std::log(static_cast<double>(n));
}

SelectionReport bic_select(const ObservationSeries& data, const SelectionConfig& config) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("bic_select: need at least 2 observations");
  const std::size_t k_max = resolve_k_max(config, n);

  SelectionReport report;
  report.n = n;
  report.method = SelectionMethod::Bic;
  for (std::size_t k = 1; k <= k_max; ++k) {
    EmResult fit = em_fit(data, k, config.em);
    const double score = -2.0 * fit.final_loglik + bic_penalty(k, n, config.penalty);
    report.per_k.push_back({k, std::move(fit), score, false});
  }
  report.k_hat = argmin_smallest_k(report.per_k);
  return report;
}

SelectionReport cv_select(const ObservationSeries& data, const SelectionConfig& config, const RngStream& rng) {
  const std::size_t n = data.size();
  if (n < 5) throw std::invalid_argument("cv_select: need at least 5 observations");
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
    throw std::invalid_argument("cv_select: train_fraction must lie in (0, 1)");
  if (config.cv_reps < 1) throw std::invalid_argument("cv_select: reps must be positive");
  const std::size_t k_max = resolve_k_max(config, n);
  const auto n_train = static_cast<std::size_t>(std::ceil(config.train_fraction * static_cast<double>(n)));
  if (n_train >= n) throw std::invalid_argument("cv_select: split leaves no held-out data");

  std::vector<double> total(k_max, 0.0);
  std::vector<bool> flagged(k_max, false);
  std::vector<std::size_t> perm(n);
  for (int rep = 0; rep < config.cv_reps; ++rep) {
    RngStream split_rng = rng.substream(static_cast<std::uint64_t>(rep));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[draw_index(split_rng, i + 1)]);
    const ObservationSeries train = gather(data, std::span(perm).first(n_train));
    const ObservationSeries test = gather(data, std::span(perm).subspan(n_train));

    for (std::size_t k = 1; k <= k_max; ++k) {
      if (train.size() < k) {
        total[k - 1] = kInf;
        flagged[k - 1] = true;
        continue;
      }
      const EmResult fit = em_fit(train, k, config.em);
      total[k - 1] += -log_likelihood(fit.params, test) / static_cast<double>(test.size());
    }
  }

  SelectionReport report;
  report.n = n;
  report.method = SelectionMethod::Cv;
  report.cv = CvSettings{config.cv_reps, config.train_fraction};
  for (std::size_t k = 1; k <= k_max; ++k) {
    report.per_k.push_back({k, em_fit(data, k, config.em), total[k - 1] / config.cv_reps, flagged[k - 1]});
  }
  report.k_hat = argmin_smallest_k(report.per_k);
  return report;
}

SelectionReport select_k(const ObservationSeries& data, SelectionMethod method, const SelectionConfig& config,
                         const RngStream& rng) {
  return method == SelectionMethod::Bic ? bic_select(data, config) : cv_select(data, config, rng);
}

std::vector<SelectionReport> k_path(const ObservationSeries& stream, std::span<const std::size_t> checkpoints,
                                    SelectionMethod method, const SelectionConfig& config, const RngStream& rng) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] > stream.size()) throw std::invalid_argument("k_path: checkpoint beyond stream length");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("k_path: checkpoints must increase");
  }
  std::vector<SelectionReport> out;
  out.reserve(checkpoints.size());
  for (std::size_t n : checkpoints)
    out.push_back(select_k(stream.prefix(n), method, config, rng.substream(static_cast<std::uint64_t>(n))));
  return out;
}

std::size_t count_k_changes(std::span<const SelectionReport> path) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i].k_hat != path[i - 1].k_hat) ++changes;
  return changes;
}

}  // namespace tbloop
