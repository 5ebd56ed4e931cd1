#ifndef STREAMLENS_MULTIFRACTAL_HPP
#define STREAMLENS_MULTIFRACTAL_HPP

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "streamlens/core.hpp"
#include "streamlens/cwt.hpp"

namespace streamlens {

/// Partition-function convention. `normalized` carries the 1/2^j cell-size
/// prefactor, `unnormalized` is the plain sum; tau differs by exactly 1.
enum class Convention { normalized, unnormalized };

/// q = -5, -4.75, ..., 5
Eigen::VectorXd default_q_grid();

/// Partition function values and the fitted scaling exponents tau(q).
struct ScalingFit {
  Eigen::VectorXd q;
  Eigen::VectorXd log_scales;
  Eigen::MatrixXd log_z; ///< q x scales
  Eigen::VectorXd tau;
  Eigen::VectorXd r_squared;
  Convention convention = Convention::unnormalized;
  /// h(q) for MF-DFA; empty for the other routes.
  Eigen::VectorXd generalized_hurst;
  std::vector<std::string> warnings;
};

enum class SpectrumMethod { oscillation, mfdfa, wtmm };

struct SpectrumPoint {
  double h = 0.0;
  double d = 0.0;
  double q = 0.0;
  /// The Legendre minimum sat at an end of the q grid.
  bool boundary_limited = false;
};

struct MultifractalSpectrum {
  std::vector<SpectrumPoint> points;
  SpectrumMethod method = SpectrumMethod::oscillation;

  double h_min() const;
  double h_max() const;
  /// Spread of h over points with d >= min_d.
  double width(double min_d = -1e300) const;
  /// Largest amount by which any point falls below a chord between two
  /// others; zero for a concave spectrum.
  double concavity_defect() const;
};

// ---------------------------------------------------------------------------
// Oscillation (range) partition functions

struct OscillationOptions {
  Eigen::VectorXd q = default_q_grid();
  int min_level = 3;
  /// Defaults to floor(log2 T) - 4, i.e. cells of at least 16 samples.
  std::optional<int> max_level;
  /// Zero ranges are raised to this before negative powers.
  double floor = 1e-12;
};

struct OscillationFit {
  Eigen::VectorXi levels;
  ScalingFit unnormalized;
  ScalingFit normalized;
};

/// Level j splits the T-1 sample intervals into 2^j cells; R is the range of
/// the series over each cell including both end samples. Z'(q, j) = sum R^q
/// and Z = Z' / 2^j; tau is the regression slope of log Z against log 2^-j.
OscillationFit oscillation_structure(const TimeSeries& series, const OscillationOptions& options = {});

/// Discrete Legendre transform on `resolution` h values spanning the
/// finite-difference slopes of tau:
///   normalized    d(h) = min_q (1 - tau(q) + h q)
///   unnormalized  d(h) = min_q (h q - tau(q))
MultifractalSpectrum legendre_spectrum(const ScalingFit& fit, Convention convention,
                                       SpectrumMethod method = SpectrumMethod::oscillation,
                                       int resolution = 64);

// ---------------------------------------------------------------------------
// MF-DFA

struct MfdfaOptions {
  Eigen::VectorXd q = default_q_grid();
  /// Explicit segment sizes; otherwise `scale_count` log-spaced sizes on
  /// [min_scale, max_scale].
  std::optional<Eigen::VectorXi> scales;
  int min_scale = 16;
  std::optional<int> max_scale; ///< defaults to T/4
  int scale_count = 20;
  int poly_order = 1;
  double floor = 1e-12;
};

struct MfdfaResult {
  Eigen::VectorXi scales;
  ScalingFit fit; ///< log_z holds log F_q(s); generalized_hurst holds h(q)
  MultifractalSpectrum spectrum;
};

MfdfaResult mfdfa(const TimeSeries& series, const MfdfaOptions& options = {});

// ---------------------------------------------------------------------------
// Wavelet transform modulus maxima

/// Locations l in 1..L-2 with |W(l)| >= both neighbours and strictly greater
/// than at least one of them. Values not above `min_modulus` are ignored.
std::vector<Eigen::Index> find_modulus_maxima(const WaveletField& field, Eigen::Index scale_index,
                                              double min_modulus = 0.0);

struct LinePoint {
  Eigen::Index scale_index = 0;
  Eigen::Index location = 0;
  double modulus = 0.0;
};

/// Points ordered from the largest scale downwards.
struct MaximaLine {
  std::vector<LinePoint> points;
};

struct Skeleton {
  std::vector<MaximaLine> lines;
};

struct SkeletonOptions {
  /// Lines spanning fewer scale steps are dropped.
  int min_steps = 4;
  /// Maxima below this fraction of their row's largest modulus are ignored.
  double relative_floor = 1e-9;
  /// Only maxima outside the cone of influence take part.
  bool respect_coi = true;
};

/// Greedy chaining from the largest scale down. A line continues to the
/// nearest free maximum within +-max(1, ceil(s/2)) samples at the next
/// smaller scale; unmatched maxima start new lines. Needs at least 8 scales.
Skeleton build_skeleton(const WaveletField& field, const SkeletonOptions& options = {});

struct WtmmOptions {
  Wavelet wavelet{WaveletKind::mexican_hat};
  Eigen::VectorXd q = default_q_grid();
  /// CWT grid; defaults to 64 log-spaced scales on [2, T/16].
  std::optional<Eigen::VectorXd> scales;
  /// Regression range in samples; defaults to [4, T/64].
  std::optional<double> fit_min_scale;
  std::optional<double> fit_max_scale;
  double floor = 1e-12;
  SkeletonOptions skeleton;
};

/// Z(q, s) = sum over lines alive at s of (sup over the line at scales <= s
/// of |W| / sqrt(s'))^q. Only lines located, at scale s, inside the region
/// trusted at the largest fitted scale contribute, so the domain is the same
/// for every s. Z(0, s) is the live-line count.
ScalingFit wtmm_structure(const WaveletField& field, const Skeleton& skeleton,
                          const Eigen::VectorXd& q, double fit_min_scale, double fit_max_scale,
                          double floor = 1e-12);

/// Live lines per fitted scale, as counted by wtmm_structure.
Eigen::VectorXi wtmm_line_counts(const WaveletField& field, const Skeleton& skeleton,
                                 double fit_min_scale, double fit_max_scale);

struct WtmmResult {
  WaveletField field;
  Skeleton skeleton;
  ScalingFit fit;
  MultifractalSpectrum spectrum;
};

WtmmResult wtmm_spectrum(const TimeSeries& series, const WtmmOptions& options = {});

struct HolderEstimate {
  double h = 0.0;
  double r_squared = 0.0;
  /// h reached the wavelet's vanishing-moment count, so it only bounds the
  /// regularity from below.
  bool moment_saturated = false;
  /// Some coefficient along the column was zero; h is NaN.
  bool degenerate = false;
  int scales_used = 0;
};

/// Slope of log sup|W| against log s over the smallest `scale_count` scales
/// trusted at `location`, minus 1/2 to undo the 1/sqrt(s) normalization. The
/// sup runs over |l - location| <= ceil(s), which follows the maxima line
/// into the singularity.
HolderEstimate holder_at_point(const WaveletField& field, Eigen::Index location, int scale_count = 8);

} // namespace streamlens

#endif
