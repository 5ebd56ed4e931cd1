#include "streamlens/xwt.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace streamlens {
namespace {

void require_matching(const WaveletField& wx, const WaveletField& wy) {
  if (!(wx.wavelet == wy.wavelet))
    throw Error("wavelet mismatch: " + std::string(wx.wavelet.name()) + " vs " +
                std::string(wy.wavelet.name()));
  if (wx.coefficients.rows() != wy.coefficients.rows() ||
      wx.coefficients.cols() != wy.coefficients.cols() || wx.scales != wy.scales)
    throw Error("wavelet fields are on different grids");
}

} // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

CrossField diffmod(const WaveletField& wx, const WaveletField& wy) {
  require_matching(wx, wy);
  return {wx.scales, (wx.coefficients - wy.coefficients).cwiseAbs().cast<std::complex<double>>(),
          CrossKind::diffmod};
}

CrossField phase_diff(const WaveletField& wx, const WaveletField& wy) {
  if (!wx.wavelet.is_complex() || !wy.wavelet.is_complex())
    throw Error("phase requires complex wavelet");
  require_matching(wx, wy);
  CrossField out{wx.scales, Eigen::MatrixXcd(wx.coefficients.rows(), wx.coefficients.cols()),
                 CrossKind::phasediff};
  out.values = wx.coefficients.binaryExpr(wy.coefficients, [](std::complex<double> a,
                                                              std::complex<double> b) {
    return std::complex<double>(wrap_phase(std::arg(a) - std::arg(b)), 0.0);
  });
  return out;
}

CrossField crwt(const WaveletField& wx, const WaveletField& wy) {
  require_matching(wx, wy);
  return {wx.scales, wx.coefficients.conjugate().cwiseProduct(wy.coefficients), CrossKind::crwt};
}

} // namespace streamlens
