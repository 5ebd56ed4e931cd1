#ifndef STREAMLENS_SYNTH_HPP
#define STREAMLENS_SYNTH_HPP

#include <cstdint>
#include <random>
#include <string>

#include "streamlens/core.hpp"

namespace streamlens {

enum class GeneratorKind { white_noise, brownian, fbm, binomial_cascade };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::white_noise;
  double hurst = 0.5; ///< fbm only, in (0, 1)
  double p = 0.7;     ///< cascade weight, in (0, 1)
  Eigen::Index length = 4096;
  std::uint64_t seed = 0;
};

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

/// Deterministic standard normal stream: mt19937_64 seeded with `seed`,
/// 53-bit uniforms, Box-Muller pairs (cosine branch first).
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed);
  double next();
  std::uint64_t next_bits();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// white_noise  i.i.d. N(0, 1)
/// brownian     running sum of white noise (no centering), the random-walk path
/// fbm          fractional Gaussian noise (the increments of fBm) with unit
///              variance, by circulant embedding; length must be a power of two
/// binomial_cascade
///              2^j cell masses of a conservative cascade; each split sends p
///              to a randomly chosen half; length must be a power of two
TimeSeries generate(const GeneratorSpec& spec);

} // namespace streamlens

#endif
