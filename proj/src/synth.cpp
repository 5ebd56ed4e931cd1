#include "streamlens/synth.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "streamlens/error.hpp"
#include "streamlens/spectral.hpp"

namespace streamlens {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "white_noise" || name == "white") return GeneratorKind::white_noise;
  if (name == "brownian") return GeneratorKind::brownian;
  if (name == "fbm") return GeneratorKind::fbm;
  if (name == "binomial_cascade" || name == "cascade") return GeneratorKind::binomial_cascade;
  throw Error("unknown generator kind '" + name + "'");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
  case GeneratorKind::white_noise: return "white_noise";
  case GeneratorKind::brownian: return "brownian";
  case GeneratorKind::fbm: return "fbm";
  case GeneratorKind::binomial_cascade: return "binomial_cascade";
  }
  return "unknown";
}

NormalStream::NormalStream(std::uint64_t seed) : engine_(seed) {}

std::uint64_t NormalStream::next_bits() { return engine_(); }

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  constexpr double unit = 1.0 / 9007199254740992.0; // 2^-53
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * unit; // (0, 1]
  const double u2 = static_cast<double>(engine_() >> 11) * unit;       // [0, 1)
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

Eigen::VectorXd white(Eigen::Index n, NormalStream& rng) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.next();
  return x;
}

Eigen::VectorXd fgn(Eigen::Index n, double hurst, NormalStream& rng) {
  const double two_h = 2.0 * hurst;
  auto gamma = [two_h](double k) {
    return 0.5 * (std::pow(std::abs(k + 1.0), two_h) - 2.0 * std::pow(std::abs(k), two_h) +
                  std::pow(std::abs(k - 1.0), two_h));
  };
  const Eigen::Index m = 2 * n;
  Eigen::VectorXd row(m);
  for (Eigen::Index k = 0; k <= n; ++k) row[k] = gamma(static_cast<double>(k));
  for (Eigen::Index k = n + 1; k < m; ++k) row[k] = row[m - k];
  const ComplexVector<double> eig = fft(row);

  ComplexVector<double> y(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double lambda = eig[k].real();
    if (lambda < -1e-8 * static_cast<double>(m))
      throw Error("circulant embedding is not non-negative definite for this Hurst exponent");
    const double a = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(m));
    const double re = rng.next();
    const double im = rng.next();
    y[k] = {a * re, a * im};
  }
  radix2_fft_inplace(y, -1);
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = y[i].real();
  return out;
}

Eigen::VectorXd cascade(Eigen::Index n, double p, NormalStream& rng) {
  Eigen::VectorXd mass = Eigen::VectorXd::Ones(1);
  while (mass.size() < n) {
    Eigen::VectorXd next(2 * mass.size());
    for (Eigen::Index i = 0; i < mass.size(); ++i) {
      const double w = (rng.next_bits() >> 63) ? p : 1.0 - p;
      next[2 * i] = mass[i] * w;
      next[2 * i + 1] = mass[i] * (1.0 - w);
    }
    mass = std::move(next);
  }
  return mass;
}

} // namespace

TimeSeries generate(const GeneratorSpec& spec) {
  if (spec.length < 1) throw Error("generator length must be positive");
  NormalStream rng(spec.seed);
  switch (spec.kind) {
  case GeneratorKind::white_noise:
    return TimeSeries(white(spec.length, rng), 0.0, 1.0, "white_noise");
  case GeneratorKind::brownian: {
    Eigen::VectorXd x = white(spec.length, rng);
    for (Eigen::Index i = 1; i < x.size(); ++i) x[i] += x[i - 1];
    return TimeSeries(std::move(x), 0.0, 1.0, "brownian");
  }
  case GeneratorKind::fbm:
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) throw Error("fbm Hurst exponent must lie in (0, 1)");
    if (!is_power_of_two(spec.length)) throw Error("fbm length must be a power of two");
    return TimeSeries(fgn(spec.length, spec.hurst, rng), 0.0, 1.0, "fbm");
  case GeneratorKind::binomial_cascade:
    if (!(spec.p > 0.0 && spec.p < 1.0)) throw Error("cascade weight p must lie in (0, 1)");
    if (!is_power_of_two(spec.length)) throw Error("cascade length must be a power of two");
    return TimeSeries(cascade(spec.length, spec.p, rng), 0.0, 1.0, "binomial_cascade");
  }
  throw Error("unknown generator kind");
}

} // namespace streamlens
