#include "tbloop/tb_loop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tbloop/numerics.hpp"

namespace tbloop {

EmConfig em_config_for(const TbConfig& config) {
  EmConfig em;
  em.tol = config.em_tol;
  em.max_iter = config.em_max_iter;
  em.component_sd = config.sigma;
  return em;
}

SelectionConfig selection_config_for(const TbConfig& config) {
  SelectionConfig sel;
  sel.k_max = config.k_max;
  sel.penalty = config.penalty;
  sel.cv_reps = config.cv_reps;
  sel.train_fraction = config.train_fraction;
  sel.em = em_config_for(config);
  return sel;
}

Hypothesis articulate(const TbState& state) {
  return {state.k_current(), state.k_current() == 1 ? AlternativeKind::KIncreased : AlternativeKind::KChanged};
}

std::string to_string(Decision d) { return d == Decision::Refine ? "REFINE" : "TRANSFORM"; }

Decision parse_decision(const std::string& s) {
  if (s == "REFINE") return Decision::Refine;
  if (s == "TRANSFORM") return Decision::Transform;
  throw std::invalid_argument("unknown decision '" + s + "'");
}

Evaluation evaluate(const TbState& state, double y_new, bool two_sided) {
  if (state.history_len() == 0) throw std::invalid_argument("evaluate: empty history");
  const double sd = state.model.marginal_sd();
  double tail = 0.0;
  for (double mu : state.model.means()) tail = std::max(tail, std_normal_sf(std::fabs(mu - y_new) / sd));
  if (two_sided) tail = std::min(1.0, 2.0 * tail);
  Evaluation ev;
  ev.tail_prob = tail;
  ev.threshold = state.alpha / static_cast<double>(state.history_len());
  ev.reject = ev.tail_prob < ev.threshold;
  return ev;
}

TbState refine(const TbState& state, double y_new, const TbConfig& config) {
  ObservationSeries data = state.data.appended(y_new);
  if (state.k_current() == 1) {
    const double n = static_cast<double>(state.history_len());
    const double mean = (n * state.model.means()[0] + y_new) / (n + 1.0);
    return {std::move(data), MixtureParams::create({1.0}, {mean}, state.model.component_sd()), state.alpha};
  }
  EmResult fit = em_fit(data, state.k_current(), em_config_for(config), state.model);
  return {std::move(data), std::move(fit.params), state.alpha};
}

TransformOutcome transform(const TbState& state, double y_new, const TbConfig& config, const RngStream& rng) {
  ObservationSeries data = state.data.appended(y_new);
  const std::size_t n = data.size();
  SelectionConfig sel = selection_config_for(config);
  if (sel.k_max > n) sel.k_max = n;

  const bool can_select = config.method == SelectionMethod::Bic ? n >= 2 : n >= 5;
  if (can_select) {
    const SelectionReport report = select_k(data, config.method, sel, rng);
    MixtureParams model = report.selected_fit().params;
    return {{std::move(data), std::move(model), state.alpha}, report.k_hat, false};
  }
  const std::size_t k = std::min(state.k_current(), n);
  EmResult fit = em_fit(data, k, sel.em);
  return {{std::move(data), std::move(fit.params), state.alpha}, k, true};
}

bool decision_consistent(const TbEvent& e) {
  return (e.decision == Decision::Transform) == (e.tail_prob < e.threshold);
}

TbState initial_state(const ObservationSeries& initial, const TbConfig& config) {
  if (initial.empty()) throw std::invalid_argument("initial_state: initial data must be nonempty");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const std::size_t n = initial.size();
  const bool can_select = config.method == SelectionMethod::Bic ? n >= 2 : n >= 5;
  if (!can_select) {
    EmResult fit = em_fit(initial, 1, em_config_for(config));
    return {initial, std::move(fit.params), config.alpha};
  }
  SelectionConfig sel = selection_config_for(config);
  if (sel.k_max > n) sel.k_max = n;
  const RngStream rng = RngStream(config.seed, 0).substream("creation");
  const SelectionReport report = select_k(initial, config.method, sel, rng);
  return {initial, report.selected_fit().params, config.alpha};
}

TbRun run_stream(const ObservationSeries& initial, const ObservationSeries& stream, const TbConfig& config) {
  TbRun run{.initial = initial_state(initial, config), .final_state = {}, .events = {}};
  const RngStream transform_rng = RngStream(config.seed, 0).substream("transform");
  TbState state = run.initial;
  run.events.reserve(stream.size());
  for (double y : stream.values) {
    const Evaluation ev = evaluate(state, y, config.two_sided);
    TbEvent event{.t = state.history_len() + 1,
                  .y_new = y,
                  .tail_prob = ev.tail_prob,
                  .threshold = ev.threshold,
                  .decision = ev.reject ? Decision::Transform : Decision::Refine,
                  .model_before = state.model,
                  .model_after = state.model,
                  .fallback = false};
    if (ev.reject) {
      TransformOutcome out = transform(state, y, config, transform_rng.substream(static_cast<std::uint64_t>(event.t)));
      event.fallback = out.fallback;
      state = std::move(out.state);
    } else {
      state = refine(state, y, config);
    }
    event.model_after = state.model;
    run.events.push_back(std::move(event));
  }
  run.final_state = std::move(state);
  return run;
}

}  // namespace tbloop
