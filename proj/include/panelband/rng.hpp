#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace panelband {

/// Stream purposes; part of the stream key so that the draws consumed by
/// one stage never shift another stage's sequence.
enum class StreamPurpose : std::uint64_t {
  Innovations = 1,
  Multipliers = 2,
  MeanShifts = 3,
  Oracle = 4,
  Generic = 5,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Deterministic substream RNG keyed by (seed, replicate, purpose).
///
/// The same key yields the same draw sequence on every run and under any
/// thread scheduling; parallel code derives one stream per unit of work.
/// Normal deviates use Box-Muller (pinned here rather than delegated to
/// std::normal_distribution so the sequence does not depend on the
/// standard library).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t replicate,
            StreamPurpose purpose = StreamPurpose::Generic)
      : engine_(key(seed, replicate, purpose)) {}

  /// Uniform on (0,1] (left-open so log() below is safe).
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform on [0,1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double angle = 2.0 * M_PI * uniform();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Student t with 6 degrees of freedom scaled by sqrt(2/3): unit variance.
  double scaled_t6() {
    const double z = normal();
    double chi2 = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double w = normal();
      chi2 += w * w;
    }
    return std::sqrt(2.0 / 3.0) * z * std::sqrt(6.0 / chi2);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  static std::uint64_t key(std::uint64_t seed, std::uint64_t replicate,
                           StreamPurpose purpose) {
    using detail::splitmix64;
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ replicate);
    k = splitmix64(k ^ static_cast<std::uint64_t>(purpose));
    return k;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Derive a child seed, e.g. the bootstrap seed of one Monte Carlo
/// replication, without correlating it with the parent's draw streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate,
                                 StreamPurpose purpose) {
  using detail::splitmix64;
  return splitmix64(splitmix64(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL) ^
                               replicate) ^
                    static_cast<std::uint64_t>(purpose));
}

enum class Dist { Normal, ScaledT6 };

/// One innovation draw from the configured error distribution.
inline double draw_error(Dist dist, RngStream& rng) {
  return dist == Dist::Normal ? rng.normal() : rng.scaled_t6();
}

}  // namespace panelband
