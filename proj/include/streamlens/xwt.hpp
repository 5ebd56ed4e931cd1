#ifndef STREAMLENS_XWT_HPP
#define STREAMLENS_XWT_HPP

#include <Eigen/Core>

#include "streamlens/cwt.hpp"

namespace streamlens {

enum class CrossKind { diffmod, phasediff, crwt };

/// Elementwise comparison of two wavelet fields sharing wavelet and grids.
struct CrossField {
  Eigen::VectorXd scales;
  Eigen::MatrixXcd values; ///< real-valued for diffmod and phasediff
  CrossKind kind = CrossKind::crwt;
};

/// |W_x - W_y|
CrossField diffmod(const WaveletField& wx, const WaveletField& wy);

/// arg W_x - arg W_y wrapped to (-pi, pi]; needs a complex wavelet.
CrossField phase_diff(const WaveletField& wx, const WaveletField& wy);

/// conj(W_x) * W_y = |W_x||W_y| exp(i (phi_y - phi_x))
CrossField crwt(const WaveletField& wx, const WaveletField& wy);

/// Principal value in (-pi, pi].
double wrap_phase(double angle);

} // namespace streamlens

#endif
