#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tbloop/rng.hpp"

namespace tbloop {

// x successes out of n trials.
struct BinomialObservation {
  int n = 1;
  int x = 0;

  // Throws std::invalid_argument unless n >= 1 and 0 <= x <= n.
  static BinomialObservation create(int n, int x);
};

struct ThetaInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_open = false;
  bool hi_open = false;
};

// Union of intervals in [0, 1], kept sorted and merged where pieces
// overlap or touch at a closed end.
class ThetaSet {
 public:
  ThetaSet() = default;
  explicit ThetaSet(std::vector<ThetaInterval> pieces);
  static ThetaSet from(ThetaInterval piece) { return ThetaSet({piece}); }
  static ThetaSet singleton(double theta) { return ThetaSet({{theta, theta, false, false}}); }

  const std::vector<ThetaInterval>& pieces() const { return pieces_; }
  ThetaSet complement() const;

 private:
  std::vector<ThetaInterval> pieces_;
};

enum class RandomSetKind { TwoSidedDefault };

// The predictive random set S = [u/2, 1 - u/2] for the auxiliary variable.
std::pair<double, double> predictive_set(double u, RandomSetKind kind = RandomSetKind::TwoSidedDefault);

// F_theta(x_arg) = 1 - I_theta(x_arg + 1, n - x_arg); 0 at x_arg = -1 and 1 at x_arg = n.
double binom_cdf(double theta, const BinomialObservation& obs, int x_arg);

// Theta_x(u) = (Beta^-1(1-u; x, n-x+1), Beta^-1(1-u; x+1, n-x)], the set of
// theta for which x = F_theta^-1(u). Requires 0 < u < 1.
ThetaInterval fiducial_set(double u, const BinomialObservation& obs);

// Theta_x(S) for S = [u/2, 1-u/2]: (Beta^-1(u/2; x, n-x+1), Beta^-1(1-u/2; x+1, n-x)].
ThetaInterval random_set_image(double u, const BinomialObservation& obs);

// The two plateau edges: medians of Beta(x, n-x+1) and Beta(x+1, n-x).
std::pair<double, double> plausibility_plateau(const BinomialObservation& obs);

// Pl_X({theta}) by the three-branch closed form.
double plausibility_singleton(double theta, const BinomialObservation& obs);

// (theta, Pl) on an evenly spaced grid over [0, 1].
std::vector<std::pair<double, double>> plausibility_curve(const BinomialObservation& obs, std::size_t points = 1001);

// {theta : Pl_X(theta) >= alpha}, each edge found by bisection on its branch.
ThetaInterval plausibility_interval(double alpha, const BinomialObservation& obs);

// [Beta^-1(alpha/2; x, n-x+1), Beta^-1(1-alpha/2; x+1, n-x)] with the
// lower end pinned at 0 for x = 0 and the upper at 1 for x = n.
ThetaInterval clopper_pearson(double alpha, const BinomialObservation& obs);

enum class BeliefMode { Analytic, MonteCarlo };

struct BeliefOptions {
  BeliefMode mode = BeliefMode::Analytic;
  RngStream rng{};
  std::size_t draws = 100000;
};

// Bel_X(A) = P(Theta_X(S) subset of A).
double belief(const ThetaSet& assertion, const BinomialObservation& obs, const BeliefOptions& options = {});
// Pl_X(A) = 1 - Bel_X(A^c), sharing the random-set draws with belief().
double plausibility(const ThetaSet& assertion, const BinomialObservation& obs, const BeliefOptions& options = {});

double belief_assertion(const ThetaInterval& assertion, const BinomialObservation& obs,
                        const BeliefOptions& options = {});

}  // namespace tbloop
