#include "tbloop/im_binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tbloop/numerics.hpp"

namespace tbloop {

namespace {

// Slack for closed-interval containment of sampled random sets; open/closed
// distinctions are below root-finding tolerance.
constexpr double kContainSlack = 1e-12;

double lower_shape_cdf(double theta, const BinomialObservation& obs) {
  return reg_inc_beta(theta, obs.x, obs.n - obs.x + 1);
}

double upper_shape_cdf(double theta, const BinomialObservation& obs) {
  return reg_inc_beta(theta, obs.x + 1, obs.n - obs.x);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

template <typename F>
double bisect(F&& increasing, double target, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (increasing(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// P(U >= threshold) for U ~ Uniform(0, 1).
double tail_from(double threshold) { return std::clamp(1.0 - threshold, 0.0, 1.0); }

double analytic_piece_belief(const ThetaInterval& piece, const BinomialObservation& obs) {
  const double a = std::clamp(piece.lo, 0.0, 1.0);
  const double b = std::clamp(piece.hi, 0.0, 1.0);
  if (a > b) return 0.0;
  // Theta_X(S) = (lo(U), hi(U)] with lo increasing and hi decreasing in U.
  double lower_threshold;
  if (obs.x == 0) {
    lower_threshold = a <= 0.0 ? 0.0 : 1.0;
  } else {
    lower_threshold = 2.0 * lower_shape_cdf(a, obs);
  }
  double upper_threshold;
  if (obs.x == obs.n) {
    upper_threshold = b >= 1.0 ? 0.0 : 1.0;
  } else {
    upper_threshold = 2.0 * (1.0 - upper_shape_cdf(b, obs));
  }
  return tail_from(std::max(lower_threshold, upper_threshold));
}

bool contains(const ThetaSet& set, const ThetaInterval& random_set) {
  for (const auto& p : set.pieces())
    if (random_set.lo >= p.lo - kContainSlack && random_set.hi <= p.hi + kContainSlack) return true;
  return false;
}

}  // namespace

BinomialObservation BinomialObservation::create(int n, int x) {
  if (n < 1) throw std::invalid_argument("binomial observation: n must be positive");
  if (x < 0 || x > n) throw std::invalid_argument("binomial observation: x must lie in [0, n]");
  return {n, x};
}

ThetaSet::ThetaSet(std::vector<ThetaInterval> pieces) {
  for (auto& p : pieces) {
    p.lo = std::clamp(p.lo, 0.0, 1.0);
    p.hi = std::clamp(p.hi, 0.0, 1.0);
  }
  std::erase_if(pieces, [](const ThetaInterval& p) {
    return p.lo > p.hi || (p.lo == p.hi && (p.lo_open || p.hi_open));
  });
  std::sort(pieces.begin(), pieces.end(), [](const ThetaInterval& a, const ThetaInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  for (const auto& p : pieces) {
    if (!pieces_.empty()) {
      auto& last = pieces_.back();
      const bool joins = p.lo < last.hi || (p.lo == last.hi && !(p.lo_open && last.hi_open));
      if (joins) {
        if (p.hi > last.hi || (p.hi == last.hi && !p.hi_open)) {
          last.hi_open = p.hi > last.hi ? p.hi_open : false;
          last.hi = p.hi;
        }
        continue;
      }
    }
    pieces_.push_back(p);
  }
}

ThetaSet ThetaSet::complement() const {
  std::vector<ThetaInterval> out;
  double cursor = 0.0;
  bool cursor_open = false;  // whether `cursor` itself is excluded from the gap
  for (const auto& p : pieces_) {
    const ThetaInterval gap{cursor, p.lo, cursor_open, !p.lo_open};
    out.push_back(gap);
    cursor = p.hi;
    cursor_open = !p.hi_open;
  }
  out.push_back({cursor, 1.0, cursor_open, false});
  return ThetaSet(std::move(out));
}

std::pair<double, double> predictive_set(double u, RandomSetKind) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("predictive_set: u must lie in [0, 1]");
  return {u / 2.0, 1.0 - u / 2.0};
}

double binom_cdf(double theta, const BinomialObservation& obs, int x_arg) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("binom_cdf: theta must lie in [0, 1]");
  if (x_arg < -1 || x_arg > obs.n) throw std::domain_error("binom_cdf: x must lie in [-1, n]");
  if (x_arg == -1) return 0.0;
  if (x_arg == obs.n) return 1.0;
  return 1.0 - reg_inc_beta(theta, x_arg + 1, obs.n - x_arg);
}

ThetaInterval fiducial_set(double u, const BinomialObservation& obs) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("fiducial_set: u must lie in (0, 1)");
  ThetaInterval out;
  out.lo = obs.x == 0 ? 0.0 : reg_inc_beta_inv(1.0 - u, obs.x, obs.n - obs.x + 1);
  out.hi = obs.x == obs.n ? 1.0 : reg_inc_beta_inv(1.0 - u, obs.x + 1, obs.n - obs.x);
  out.lo_open = obs.x > 0;  // theta = 0 belongs when x = 0
  out.hi_open = false;
  return out;
}

ThetaInterval random_set_image(double u, const BinomialObservation& obs) {
  const auto [s_lo, s_hi] = predictive_set(u);
  ThetaInterval out;
  out.lo = obs.x == 0 ? 0.0 : reg_inc_beta_inv(s_lo, obs.x, obs.n - obs.x + 1);
  out.hi = obs.x == obs.n ? 1.0 : reg_inc_beta_inv(s_hi, obs.x + 1, obs.n - obs.x);
  out.lo_open = obs.x > 0;  // theta = 0 belongs when x = 0
  out.hi_open = false;
  return out;
}

std::pair<double, double> plausibility_plateau(const BinomialObservation& obs) {
  const double lo = obs.x == 0 ? 0.0 : reg_inc_beta_inv(0.5, obs.x, obs.n - obs.x + 1);
  const double hi = obs.x == obs.n ? 1.0 : reg_inc_beta_inv(0.5, obs.x + 1, obs.n - obs.x);
  return {lo, hi};
}

double plausibility_singleton(double theta, const BinomialObservation& obs) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("plausibility: theta must lie in [0, 1]");
  const auto [med_lo, med_hi] = plausibility_plateau(obs);
  if (theta < med_lo) return std::min(1.0, 2.0 * lower_shape_cdf(theta, obs));
  if (theta > med_hi) return std::min(1.0, 2.0 * (1.0 - upper_shape_cdf(theta, obs)));
  return 1.0;
}

std::vector<std::pair<double, double>> plausibility_curve(const BinomialObservation& obs, std::size_t points) {
  if (points < 2) throw std::invalid_argument("plausibility_curve: need at least two grid points");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double theta = static_cast<double>(i) / static_cast<double>(points - 1);
    out.emplace_back(theta, plausibility_singleton(theta, obs));
  }
  return out;
}

ThetaInterval plausibility_interval(double alpha, const BinomialObservation& obs) {
  check_alpha(alpha);
  const auto [med_lo, med_hi] = plausibility_plateau(obs);
  ThetaInterval out;
  out.lo = obs.x == 0 ? 0.0
                      : bisect([&](double t) { return 2.0 * lower_shape_cdf(t, obs); }, alpha, 0.0, med_lo);
  // The upper branch decreases; bisect its negation.
  out.hi = obs.x == obs.n
               ? 1.0
               : bisect([&](double t) { return -2.0 * (1.0 - upper_shape_cdf(t, obs)); }, -alpha, med_hi, 1.0);
  return out;
}

ThetaInterval clopper_pearson(double alpha, const BinomialObservation& obs) {
  check_alpha(alpha);
  ThetaInterval out;
  out.lo = obs.x == 0 ? 0.0 : reg_inc_beta_inv(alpha / 2.0, obs.x, obs.n - obs.x + 1);
  out.hi = obs.x == obs.n ? 1.0 : reg_inc_beta_inv(1.0 - alpha / 2.0, obs.x + 1, obs.n - obs.x);
  return out;
}

double belief(const ThetaSet& assertion, const BinomialObservation& obs, const BeliefOptions& options) {
  if (options.mode == BeliefMode::Analytic) {
    // Theta_X(S) is a nonempty interval, so containment in a union of
    // separated pieces is a disjoint union of per-piece events.
    double total = 0.0;
    for (const auto& p : assertion.pieces()) total += analytic_piece_belief(p, obs);
    return std::min(total, 1.0);
  }
  if (options.draws == 0) throw std::invalid_argument("belief: Monte Carlo mode needs draws > 0");
  RngStream rng = options.rng;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < options.draws; ++i) {
    if (contains(assertion, random_set_image(draw_uniform(rng), obs))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(options.draws);
}

double plausibility(const ThetaSet& assertion, const BinomialObservation& obs, const BeliefOptions& options) {
  return 1.0 - belief(assertion.complement(), obs, options);
}

double belief_assertion(const ThetaInterval& assertion, const BinomialObservation& obs, const BeliefOptions& options) {
  return belief(ThetaSet::from(assertion), obs, options);
}

}  // namespace tbloop
