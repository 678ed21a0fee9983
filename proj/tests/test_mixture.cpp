#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "tbloop/mixture.hpp"
#include "tbloop/series_io.hpp"

using namespace tbloop;

namespace {

// The three-component truth used for the creation experiments.
MixtureParams truth() { return MixtureParams::create({0.3, 0.5, 0.2}, {-2.0, 2.0, 5.0}); }

// Frozen from a 40-digit direct sum.
constexpr double kTruthLogDensityAt2 = -1.607451591721729866599196;

}  // namespace

TEST_CASE("MixtureParams construction") {
  const auto p = MixtureParams::create({0.2, 0.8}, {3.0, -1.0}, 0.5);
  CHECK(p.k() == 2);
  CHECK(p.means() == std::vector<double>{-1.0, 3.0});
  CHECK(p.weights() == std::vector<double>{0.8, 0.2});
  CHECK(p.marginal_sd() * p.marginal_sd() == doctest::Approx(0.25 + 1.0).epsilon(1e-15));

  SUBCASE("unsorted input canonicalizes") {
    RngStream rng(17, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t k = 1 + draw_index(rng, 6);
      std::vector<double> w(k);
      std::vector<double> m(k);
      double total = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        w[j] = 0.1 + draw_uniform(rng);
        total += w[j];
        m[j] = draw_normal(rng, 0.0, 5.0);
      }
      for (double& v : w) v /= total;
      std::vector<std::size_t> order(k);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return m[a] < m[b]; });
      std::vector<double> ws;
      std::vector<double> ms;
      for (auto i : order) {
        ws.push_back(w[i]);
        ms.push_back(m[i]);
      }
      CHECK(MixtureParams::create(w, m) == MixtureParams::create(ws, ms));
      const auto& p2 = MixtureParams::create(w, m);
      CHECK(std::is_sorted(p2.means().begin(), p2.means().end()));
      CHECK(std::fabs(std::accumulate(p2.weights().begin(), p2.weights().end(), 0.0) - 1.0) <= 1e-12);
    }
  }

  CHECK_THROWS_AS(MixtureParams::create({0.5}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureParams::create({0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureParams::create({0.5, 0.6}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureParams::create({1.0}, {0.0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(MixtureParams::create({}, {}), std::invalid_argument);
}

TEST_CASE("marginal_log_density") {
  const auto standard = MixtureParams::create({1.0}, {0.0});
  CHECK(marginal_log_density(standard, 0.0) == doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-15));

  const double a = 1.0;
  const auto sym = MixtureParams::create({0.5, 0.5}, {-a, a});
  CHECK(marginal_log_density(sym, 0.0) == doctest::Approx(marginal_log_density(standard, a)).epsilon(1e-15));

  CHECK(std::fabs(oracle::mixture_log_density({0.3, 0.5, 0.2}, {-2, 2, 5}, 1.0, 2.0) - kTruthLogDensityAt2) < 1e-14);
  CHECK(marginal_log_density(truth(), 2.0) == doctest::Approx(kTruthLogDensityAt2).epsilon(1e-14));

  SUBCASE("far tails stay finite") {
    CHECK(std::isfinite(marginal_log_density(truth(), 1e4)));
  }

  SUBCASE("normalization over a wide grid") {
    RngStream rng(23, 0);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t k = 1 + draw_index(rng, 4);
      std::vector<double> w(k);
      std::vector<double> m(k);
      double total = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        w[j] = 0.05 + draw_uniform(rng);
        total += w[j];
        m[j] = draw_normal(rng, 0.0, 3.0);
      }
      for (double& v : w) v /= total;
      const auto p = MixtureParams::create(w, m, draw_uniform(rng));
      const double h = 1e-3;
      double integral = 0.0;
      for (double y = -40.0; y <= 40.0; y += h) integral += std::exp(marginal_log_density(p, y)) * h;
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
}

TEST_CASE("log_likelihood") {
  const auto p = MixtureParams::create({0.4, 0.6}, {-1.5, 2.0});
  const std::vector<double> one{0.7};
  CHECK(log_likelihood(p, one) == marginal_log_density(p, 0.7));

  const std::vector<double> five{-2.0, -0.5, 0.3, 1.9, 4.1};
  CHECK(log_likelihood(p, five) ==
        doctest::Approx(oracle::mixture_log_likelihood({0.4, 0.6}, {-1.5, 2.0}, 1.0, five)).epsilon(1e-13));

  std::vector<double> permuted{4.1, 0.3, -2.0, 1.9, -0.5};
  CHECK(log_likelihood(p, permuted) == doctest::Approx(log_likelihood(p, five)).epsilon(1e-15));

  CHECK_THROWS_AS(log_likelihood(p, std::vector<double>{}), std::domain_error);

  SUBCASE("true parameters beat a shifted model") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RngStream rng(seed, 1);
      const auto data = simulate(truth(), 50, rng);
      const auto shifted = MixtureParams::create({0.3, 0.5, 0.2}, {8.0, 12.0, 15.0});
      CHECK(log_likelihood(truth(), data) > log_likelihood(shifted, data));
    }
  }
}

TEST_CASE("simulate") {
  RngStream rng1(99, 0);
  RngStream rng2(99, 0);
  CHECK(simulate(truth(), 200, rng1) == simulate(truth(), 200, rng2));

  const auto standard = MixtureParams::create({1.0}, {0.0});
  RngStream rng(5, 0);
  const std::size_t n = 100000;
  const auto s = simulate(standard, n, rng);
  CHECK(std::fabs(s.mean()) <= 3.0 / std::sqrt(static_cast<double>(n)));

  RngStream rng3(6, 0);
  const auto sim = simulate_with_components(truth(), n, rng3);
  std::vector<double> freq(3, 0.0);
  for (auto c : sim.components) freq[c] += 1.0 / n;
  CHECK(std::fabs(freq[0] - 0.3) <= 0.01);
  CHECK(std::fabs(freq[1] - 0.5) <= 0.01);
  CHECK(std::fabs(freq[2] - 0.2) <= 0.01);
}

TEST_CASE("ObservationSeries helpers") {
  ObservationSeries s{{1.0, 2.0, 3.0}, std::vector<double>{1, 2, 3}};
  CHECK(s.mean() == 2.0);
  const auto p = s.prefix(2);
  CHECK(p.values == std::vector<double>{1.0, 2.0});
  CHECK(*p.labels == std::vector<double>{1, 2});
  const auto a = s.appended(6.0);
  CHECK(a.values.back() == 6.0);
  CHECK(a.labels->back() == 4.0);
  CHECK_THROWS_AS(ObservationSeries{}.mean(), std::domain_error);
}

TEST_CASE("series CSV") {
  SUBCASE("round trip preserves every bit") {
    RngStream rng(8, 0);
    ObservationSeries s;
    s.labels.emplace();
    for (int i = 0; i < 200; ++i) {
      s.values.push_back(draw_normal(rng, 0, 1e3) * std::pow(10.0, static_cast<int>(draw_index(rng, 30)) - 15));
      s.labels->push_back(i + 1);
    }
    std::stringstream ss;
    const std::string comments[] = {"config_hash=abc seed=1"};
    write_series_csv(ss, s, comments);
    CHECK(read_series_csv(ss) == s);
  }
  SUBCASE("header only") {
    std::stringstream ss("y\n");
    CHECK(read_series_csv(ss).empty());
  }
  SUBCASE("extra columns are ignored") {
    std::stringstream ss("# provenance\ny,component\n1.5,0\n-2,2\n");
    const auto s = read_series_csv(ss);
    CHECK(s.values == std::vector<double>{1.5, -2.0});
    CHECK(!s.labels);
  }
  SUBCASE("errors carry the line number") {
    std::stringstream bad("y,t\n1,1\nfoo,2\n");
    try {
      read_series_csv(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    std::stringstream ragged("y,t\n1,1\n2\n");
    CHECK_THROWS_AS(read_series_csv(ragged), ParseError);
    std::stringstream no_y("x\n1\n");
    CHECK_THROWS_AS(read_series_csv(no_y), ParseError);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_series_csv(empty), ParseError);
  }
  CHECK(format_real(0.1) == "0.10000000000000001");
}
