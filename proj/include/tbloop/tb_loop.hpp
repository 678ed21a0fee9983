#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tbloop/creation.hpp"
#include "tbloop/estimation.hpp"
#include "tbloop/mixture.hpp"

namespace tbloop {

struct TbConfig {
  double alpha = 0.05;
  double sigma = 0.0;  // component sd; observations spread with sqrt(sigma^2 + 1)
  std::size_t k_max = 0;  // 0 selects default_k_max(n) at each creation step
  SelectionMethod method = SelectionMethod::Bic;
  int cv_reps = 50;
  double train_fraction = 0.8;
  // false: reject when 1 - Phi(|z|) < alpha/n, as printed.
  // true: use the conventional 2 * (1 - Phi(|z|)).
  bool two_sided = false;
  PenaltyVariant penalty = PenaltyVariant::PaperKLogN;
  std::uint64_t seed = 0;
  double em_tol = 1e-6;
  int em_max_iter = 500;
};

EmConfig em_config_for(const TbConfig& config);
SelectionConfig selection_config_for(const TbConfig& config);

// Loop state at stream index n: the data seen so far and the current model.
struct TbState {
  ObservationSeries data;
  MixtureParams model;
  double alpha = 0.05;

  std::size_t k_current() const { return model.k(); }
  std::size_t history_len() const { return data.size(); }
};

enum class AlternativeKind { KIncreased, KChanged };

// H0: K stays at null_k after the new observation.
struct Hypothesis {
  std::size_t null_k = 1;
  AlternativeKind alt_kind = AlternativeKind::KChanged;
};

Hypothesis articulate(const TbState& state);

enum class Decision { Refine, Transform };
std::string to_string(Decision d);
Decision parse_decision(const std::string& s);

struct Evaluation {
  double tail_prob = 1.0;
  double threshold = 0.0;
  bool reject = false;
};

// Tail probability of y_new under the nearest component (max over
// components of 1 - Phi(|mean_k - y_new| / marginal_sd)) against the
// Bonferroni threshold alpha / n.
Evaluation evaluate(const TbState& state, double y_new, bool two_sided = false);

// Keeps K. For K = 1 the mean is updated in closed form; for K >= 2 EM is
// warm-started from the current model on the extended data.
TbState refine(const TbState& state, double y_new, const TbConfig& config);

struct TransformOutcome {
  TbState state;
  std::size_t k_hat = 1;
  // Creation could not run (too little data); refit at the previous K.
  bool fallback = false;
};

// Appends y_new, re-selects K on all data and refits at the selected K.
TransformOutcome transform(const TbState& state, double y_new, const TbConfig& config, const RngStream& rng);

struct TbEvent {
  std::size_t t = 0;  // 1-based position of y_new in the full data
  double y_new = 0.0;
  double tail_prob = 1.0;
  double threshold = 0.0;
  Decision decision = Decision::Refine;
  MixtureParams model_before;
  MixtureParams model_after;
  bool fallback = false;
};

// decision == Transform exactly when tail_prob < threshold.
bool decision_consistent(const TbEvent& e);

// Creation on the initial data, no evaluation.
TbState initial_state(const ObservationSeries& initial, const TbConfig& config);

struct TbRun {
  TbState initial;
  TbState final_state;
  std::vector<TbEvent> events;
};

// Creation on `initial`, then evaluate -> refine|transform for each point of
// `stream`. Deterministic in (initial, stream, config).
TbRun run_stream(const ObservationSeries& initial, const ObservationSeries& stream, const TbConfig& config);

}  // namespace tbloop
