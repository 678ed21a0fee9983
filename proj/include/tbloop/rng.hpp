#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tbloop {

// Counter-based random stream. Every output is a pure function of
// (seed, stream_id, counter), so results do not depend on platform, library
// distribution implementations, or the order in which sub-streams are used.
// Copying a stream forks it: the copy replays the same draws.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  // Independent child stream; the parent is not advanced.
  RngStream substream(std::uint64_t id) const;
  RngStream substream(std::string_view name) const;

  std::uint64_t next_u64();

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
};

// Uniform on the open interval (0, 1).
double draw_uniform(RngStream& rng);
double draw_normal(RngStream& rng, double mean, double sd);
double draw_gamma(RngStream& rng, double shape);
std::vector<double> draw_dirichlet(RngStream& rng, std::span<const double> concentrations);
// Index drawn with probability proportional to weights (nonnegative, positive sum).
std::size_t draw_categorical(RngStream& rng, std::span<const double> weights);
// Uniform integer in [0, bound).
std::uint64_t draw_index(RngStream& rng, std::uint64_t bound);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace tbloop
