#include "tbloop/json_io.hpp"

#include <cmath>

namespace tbloop {

using nlohmann::json;

namespace {

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void to_json(json& j, const MixtureParams& p) {
  j = json{{"k", p.k()},
           {"weights", p.weights()},
           {"means", p.means()},
           {"component_sd", p.component_sd()},
           {"marginal_sd", p.marginal_sd()}};
}

void from_json(const json& j, MixtureParams& p) {
  p = MixtureParams::create(j.at("weights").get<std::vector<double>>(), j.at("means").get<std::vector<double>>(),
                            j.value("component_sd", 0.0));
}

void to_json(json& j, const EmResult& r) {
  j = json{{"params", r.params},
           {"n_iters", r.n_iters},
           {"converged", r.converged},
           {"final_loglik", real(r.final_loglik)},
           {"degenerate", r.degenerate}};
  if (!r.trajectory.empty()) j["trajectory"] = r.trajectory;
}

void to_json(json& j, const KScore& s) {
  j = json{{"k", s.k}, {"score", real(s.score)}, {"flagged", s.flagged}};
  if (s.fit) j["fit"] = *s.fit;
}

void to_json(json& j, const SelectionReport& r) {
  j = json{{"n", r.n}, {"k_hat", r.k_hat}, {"method", to_string(r.method)}, {"per_k", r.per_k}};
  if (r.cv) j["cv_config"] = json{{"reps", r.cv->reps}, {"train_fraction", r.cv->train_fraction}};
}

void to_json(json& j, const TbEvent& e) {
  j = json{{"t", e.t},
           {"y_new", e.y_new},
           {"tail_prob", e.tail_prob},
           {"threshold", e.threshold},
           {"decision", to_string(e.decision)},
           {"fallback", e.fallback},
           {"model_before", e.model_before},
           {"model_after", e.model_after}};
}

void from_json(const json& j, TbEvent& e) {
  e.t = j.at("t").get<std::size_t>();
  e.y_new = j.at("y_new").get<double>();
  e.tail_prob = j.at("tail_prob").get<double>();
  e.threshold = j.at("threshold").get<double>();
  e.decision = parse_decision(j.at("decision").get<std::string>());
  e.fallback = j.value("fallback", false);
  e.model_before = j.at("model_before").get<MixtureParams>();
  e.model_after = j.at("model_after").get<MixtureParams>();
}

void to_json(json& j, const ThetaInterval& t) {
  j = json{{"lo", t.lo}, {"hi", t.hi}, {"lo_open", t.lo_open}, {"hi_open", t.hi_open}};
}

}  // namespace tbloop
