#include "tbloop/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tbloop {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream_id) {
  return mix64(mix64(seed + kGolden) ^ mix64(stream_id * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL));
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RngStream RngStream::substream(std::uint64_t id) const {
  return RngStream(seed_, mix64(stream_id_ ^ mix64(id + kGolden)));
}

RngStream RngStream::substream(std::string_view name) const { return substream(fnv1a64(name)); }

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(stream_key(seed_, stream_id_) + counter_ * kGolden);
}

double draw_uniform(RngStream& rng) {
  return (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double draw_normal(RngStream& rng, double mean, double sd) {
  if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean))
    throw std::domain_error("draw_normal: sd must be positive and finite");
  // Marsaglia polar method; the second variate is discarded so each draw
  // consumes a self-contained block of the stream.
  for (;;) {
    const double u = 2.0 * draw_uniform(rng) - 1.0;
    const double v = 2.0 * draw_uniform(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double draw_gamma(RngStream& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw std::domain_error("draw_gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = draw_gamma(rng, shape + 1.0);
    return g * std::pow(draw_uniform(rng), 1.0 / shape);
  }
  // Marsaglia & Tsang.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = draw_normal(rng, 0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = draw_uniform(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> draw_dirichlet(RngStream& rng, std::span<const double> concentrations) {
  if (concentrations.empty()) throw std::domain_error("draw_dirichlet: empty concentration vector");
  std::vector<double> out(concentrations.size());
  double total = 0.0;
  for (std::size_t i = 0; i < concentrations.size(); ++i) {
    out[i] = draw_gamma(rng, concentrations[i]);
    total += out[i];
  }
  if (!(total > 0.0)) {
    // All gammas underflowed; only reachable with tiny concentrations.
    out.assign(out.size(), 1.0 / static_cast<double>(out.size()));
    return out;
  }
  for (double& v : out) v /= total;
  return out;
}

std::size_t draw_categorical(RngStream& rng, std::span<const double> weights) {
  if (weights.empty()) throw std::domain_error("draw_categorical: empty weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) throw std::domain_error("draw_categorical: weights must have positive sum");
  const double target = draw_uniform(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding at the top end: the last index with positive weight.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return i;
  return weights.size() - 1;
}

std::uint64_t draw_index(RngStream& rng, std::uint64_t bound) {
  if (bound == 0) throw std::domain_error("draw_index: bound must be positive");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  for (;;) {
    const std::uint64_t r = rng.next_u64();
    if (r < limit) return r % bound;
  }
}

}  // namespace tbloop
