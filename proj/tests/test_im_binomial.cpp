#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tbloop/im_binomial.hpp"
#include "tbloop/numerics.hpp"

using namespace tbloop;

namespace {

const BinomialObservation kTenFour = BinomialObservation::create(10, 4);

// 40-digit inverse-beta values for n = 10, x = 4.
constexpr double kBetaInv005_4_7 = 0.1500282408066800005933203;
constexpr double kBetaInv095_5_6 = 0.69646278743595792335295;
constexpr double kMedian_4_7 = 0.3550999679124886052180851;
constexpr double kMedian_5_6 = 0.4516941562236630826397512;

bool contains(const ThetaInterval& iv, double theta) {
  const bool above = iv.lo_open ? theta > iv.lo : theta >= iv.lo;
  const bool below = iv.hi_open ? theta < iv.hi : theta <= iv.hi;
  return above && below;
}

}  // namespace

TEST_CASE("BinomialObservation validation") {
  CHECK_THROWS_AS(BinomialObservation::create(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(BinomialObservation::create(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(BinomialObservation::create(5, -1), std::invalid_argument);
  CHECK(BinomialObservation::create(5, 5).x == 5);
}

TEST_CASE("binom_cdf") {
  CHECK(binom_cdf(0.37, kTenFour, 10) == 1.0);
  CHECK(binom_cdf(0.37, kTenFour, -1) == 0.0);
  CHECK(binom_cdf(0.5, BinomialObservation::create(1, 0), 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::fabs(binom_cdf(0.3, kTenFour, 4) - oracle::binomial_cdf_sum(0.3, 10, 4)) <= 1e-12);
  for (int n : {1, 3, 10, 25}) {
    const auto obs = BinomialObservation::create(n, 0);
    for (int x = 0; x < n; ++x)
      for (double theta : {0.01, 0.2, 0.5, 0.77, 0.99})
        CHECK(std::fabs(binom_cdf(theta, obs, x) - oracle::binomial_cdf_sum(theta, n, x)) <= 1e-12);
  }
  CHECK_THROWS(binom_cdf(0.5, kTenFour, 11));
}

TEST_CASE("fiducial_set") {
  SUBCASE("x = 0 starts at zero") {
    const auto obs = BinomialObservation::create(7, 0);
    for (double u : {0.01, 0.3, 0.9}) CHECK(fiducial_set(u, obs).lo == 0.0);
    const auto full = BinomialObservation::create(7, 7);
    for (double u : {0.01, 0.3, 0.9}) CHECK(fiducial_set(u, full).hi == 1.0);
  }
  SUBCASE("medians at u = 1/2") {
    const ThetaInterval iv = fiducial_set(0.5, kTenFour);
    CHECK(std::fabs(oracle::beta_inv_integer(0.5, 4, 7) - kMedian_4_7) <= 1e-12);
    CHECK(std::fabs(oracle::beta_inv_integer(0.5, 5, 6) - kMedian_5_6) <= 1e-12);
    CHECK(std::fabs(iv.lo - kMedian_4_7) <= 1e-10);
    CHECK(std::fabs(iv.hi - kMedian_5_6) <= 1e-10);
    CHECK(iv.lo < iv.hi);
    CHECK(iv.lo_open);
    CHECK_FALSE(iv.hi_open);
  }
  SUBCASE("membership matches the cdf sandwich") {
    // theta in Theta_x(u) iff F_theta(x - 1) < u <= F_theta(x).
    int checked = 0;
    for (int x = 0; x <= 10; ++x) {
      const auto obs = BinomialObservation::create(10, x);
      for (int i = 1; i < 60; ++i) {
        const double u = i / 60.0;
        const ThetaInterval iv = fiducial_set(u, obs);
        for (int j = 0; j <= 97; ++j) {
          const double theta = j / 97.0;
          const double below = x == 0 ? 0.0 : oracle::binomial_cdf_sum(theta, 10, x - 1);
          const double at = oracle::binomial_cdf_sum(theta, 10, x);
          // Skip points within root-finding tolerance of an endpoint.
          if (std::fabs(below - u) < 1e-9 || std::fabs(at - u) < 1e-9) continue;
          CHECK(contains(iv, theta) == (below < u && u <= at));
          ++checked;
        }
      }
    }
    CHECK(checked > 60000);
  }
  CHECK_THROWS(fiducial_set(0.0, kTenFour));
  CHECK_THROWS(fiducial_set(1.0, kTenFour));
}

TEST_CASE("random set image widens with smaller u") {
  const auto [s_lo, s_hi] = predictive_set(0.3);
  CHECK(s_lo == 0.15);
  CHECK(s_hi == 0.85);
  const ThetaInterval wide = random_set_image(0.1, kTenFour);
  const ThetaInterval narrow = random_set_image(0.9, kTenFour);
  CHECK(wide.lo < narrow.lo);
  CHECK(wide.hi > narrow.hi);
  // Union of Theta_x(u') over u' in S equals the image.
  const ThetaInterval at_lo = fiducial_set(1.0 - 0.05, kTenFour);
  const ThetaInterval at_hi = fiducial_set(0.05, kTenFour);
  CHECK(random_set_image(0.1, kTenFour).lo == doctest::Approx(at_lo.lo).epsilon(1e-12));
  CHECK(random_set_image(0.1, kTenFour).hi == doctest::Approx(at_hi.hi).epsilon(1e-12));
}

TEST_CASE("plausibility_singleton") {
  const auto [p_lo, p_hi] = plausibility_plateau(kTenFour);
  CHECK(std::fabs(p_lo - kMedian_4_7) <= 1e-10);
  CHECK(std::fabs(p_hi - kMedian_5_6) <= 1e-10);
  for (double t = p_lo; t <= p_hi; t += (p_hi - p_lo) / 17.0) CHECK(plausibility_singleton(t, kTenFour) == 1.0);
  CHECK(plausibility_singleton(p_lo - 1e-6, kTenFour) < 1.0);
  CHECK(plausibility_singleton(p_hi + 1e-6, kTenFour) < 1.0);
  CHECK(plausibility_singleton(0.0, kTenFour) == 0.0);
  CHECK(plausibility_singleton(1.0, kTenFour) == 0.0);

  SUBCASE("branches against the integer-shape oracle") {
    for (double t : {0.05, 0.2, 0.3}) {
      CHECK(plausibility_singleton(t, kTenFour) ==
            doctest::Approx(2.0 * oracle::beta_cdf_integer(t, 4, 7)).epsilon(1e-11));
    }
    for (double t : {0.5, 0.7, 0.95}) {
      CHECK(plausibility_singleton(t, kTenFour) ==
            doctest::Approx(2.0 * (1.0 - oracle::beta_cdf_integer(t, 5, 6))).epsilon(1e-11));
    }
  }
  SUBCASE("monotone branches for every x") {
    for (int x = 0; x <= 10; ++x) {
      const auto obs = BinomialObservation::create(10, x);
      const auto curve = plausibility_curve(obs, 1001);
      REQUIRE(curve.size() == 1001);
      CHECK(curve.front().first == 0.0);
      CHECK(curve.back().first == 1.0);
      std::size_t peak = 0;
      while (peak + 1 < curve.size() && curve[peak].second < 1.0) ++peak;
      for (std::size_t i = 1; i <= peak; ++i) CHECK(curve[i].second >= curve[i - 1].second);
      for (std::size_t i = peak + 1; i < curve.size(); ++i) {
        CHECK(curve[i].second <= curve[i - 1].second);
        CHECK(curve[i].second >= 0.0);
      }
    }
  }
  SUBCASE("edge observations") {
    const auto zero = BinomialObservation::create(10, 0);
    CHECK(plausibility_singleton(0.0, zero) == 1.0);
    const auto full = BinomialObservation::create(10, 10);
    CHECK(plausibility_singleton(1.0, full) == 1.0);
  }
}

TEST_CASE("plausibility and Clopper-Pearson intervals") {
  const ThetaInterval pl = plausibility_interval(0.1, kTenFour);
  CHECK(std::fabs(oracle::beta_inv_integer(0.05, 4, 7) - kBetaInv005_4_7) <= 1e-12);
  CHECK(std::fabs(oracle::beta_inv_integer(0.95, 5, 6) - kBetaInv095_5_6) <= 1e-12);
  CHECK(std::fabs(pl.lo - kBetaInv005_4_7) <= 1e-8);
  CHECK(std::fabs(pl.hi - kBetaInv095_5_6) <= 1e-8);

  const ThetaInterval cp = clopper_pearson(0.1, kTenFour);
  CHECK(std::fabs(cp.lo - kBetaInv005_4_7) <= 1e-10);
  CHECK(std::fabs(cp.hi - kBetaInv095_5_6) <= 1e-10);

  const ThetaInterval narrow = plausibility_interval(0.2, kTenFour);
  const ThetaInterval wide = plausibility_interval(0.05, kTenFour);
  CHECK(wide.lo <= narrow.lo);
  CHECK(narrow.hi <= wide.hi);

  for (int n : {1, 4, 10, 30}) {
    for (int x = 0; x <= n; ++x) {
      const auto obs = BinomialObservation::create(n, x);
      for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
        const ThetaInterval a = plausibility_interval(alpha, obs);
        const ThetaInterval b = clopper_pearson(alpha, obs);
        CHECK(std::fabs(a.lo - b.lo) <= 1e-8);
        CHECK(std::fabs(a.hi - b.hi) <= 1e-8);
      }
    }
  }
  CHECK(clopper_pearson(0.05, BinomialObservation::create(6, 0)).lo == 0.0);
  CHECK(clopper_pearson(0.05, BinomialObservation::create(6, 6)).hi == 1.0);
  CHECK_THROWS(plausibility_interval(0.0, kTenFour));
  CHECK_THROWS(clopper_pearson(1.0, kTenFour));
}

TEST_CASE("ThetaSet normalisation") {
  const ThetaSet s({{0.5, 0.7, false, true}, {0.1, 0.2, false, false}, {0.7, 0.9, false, false}});
  REQUIRE(s.pieces().size() == 2);
  CHECK(s.pieces()[0].lo == 0.1);
  CHECK(s.pieces()[1].lo == 0.5);
  CHECK(s.pieces()[1].hi == 0.9);

  const ThetaSet c = ThetaSet::from({0.2, 0.6, true, false}).complement();
  REQUIRE(c.pieces().size() == 2);
  CHECK(c.pieces()[0].lo == 0.0);
  CHECK(c.pieces()[0].hi == 0.2);
  CHECK_FALSE(c.pieces()[0].hi_open);
  CHECK(c.pieces()[1].lo == 0.6);
  CHECK(c.pieces()[1].lo_open);
  CHECK(c.pieces()[1].hi == 1.0);

  CHECK(ThetaSet::from({0.0, 1.0}).complement().pieces().empty());
  CHECK(ThetaSet().complement().pieces().size() == 1);
}

TEST_CASE("belief and plausibility of assertions") {
  const ThetaSet everything = ThetaSet::from({0.0, 1.0});
  CHECK(belief(everything, kTenFour) == 1.0);
  CHECK(belief(ThetaSet::singleton(0.4), kTenFour) == 0.0);
  CHECK(plausibility(ThetaSet::singleton(0.4), kTenFour) == doctest::Approx(plausibility_singleton(0.4, kTenFour)));

  const ThetaInterval a{0.1, 0.8, false, false};
  const double analytic = belief_assertion(a, kTenFour);
  BeliefOptions mc{BeliefMode::MonteCarlo, RngStream(3, 0), 200000};
  const double estimate = belief_assertion(a, kTenFour, mc);
  const double se = std::sqrt(analytic * (1.0 - analytic) / 200000.0);
  CHECK(std::fabs(estimate - analytic) <= 3.0 * se);
  // Closed form: the image fits inside A iff U >= max(2 I_a(x, n-x+1), 2(1 - I_b(x+1, n-x))).
  const double cut = std::max(2.0 * oracle::beta_cdf_integer(0.1, 4, 7), 2.0 * (1.0 - oracle::beta_cdf_integer(0.8, 5, 6)));
  CHECK(analytic == doctest::Approx(1.0 - cut).epsilon(1e-10));

  SUBCASE("duality with shared draws") {
    const ThetaSet set = ThetaSet::from(a);
    for (auto mode : {BeliefMode::Analytic, BeliefMode::MonteCarlo}) {
      BeliefOptions opts{mode, RngStream(9, 1), 50000};
      const double bel = belief(set, kTenFour, opts);
      const double pl = plausibility(set, kTenFour, opts);
      CHECK(bel <= pl);
      CHECK(pl == doctest::Approx(1.0 - belief(set.complement(), kTenFour, opts)).epsilon(1e-15));
    }
  }
}

TEST_CASE("plausibility validity at small scale") {
  // Frequency of Pl_X(theta) <= alpha stays near or below alpha.
  RngStream rng(13, 0);
  constexpr int kReps = 4000;
  for (double theta : {0.2, 0.5}) {
    int hits = 0;
    for (int r = 0; r < kReps; ++r) {
      int x = 0;
      for (int i = 0; i < 10; ++i) x += draw_uniform(rng) < theta;
      hits += plausibility_singleton(theta, BinomialObservation::create(10, x)) <= 0.1;
    }
    CHECK(hits / static_cast<double>(kReps) <= 0.1 + 3.0 * std::sqrt(0.09 / kReps));
  }
}
