#pragma once

#include <cmath>
#include <complex>

namespace tunnelsim {

// Minimal 2x2 complex matrix; all the transfer-matrix algebra needs.
struct Mat2 {
  std::complex<double> m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

  static Mat2 identity() { return {}; }

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  std::complex<double> det() const { return m00 * m11 - m01 * m10; }
};

// Matrix with a separated exponent: the represented value is m * e^{log_scale}.
// Evanescent layers contribute factors e^{kappa d} that overflow a double for
// kappa d beyond ~700; pulling the growth into log_scale keeps opaque-barrier
// scans representable.
struct ScaledMat2 {
  Mat2 m;
  double log_scale = 0.0;

  static ScaledMat2 identity() { return {}; }

  ScaledMat2 operator*(const ScaledMat2& o) const {
    ScaledMat2 r{m * o.m, log_scale + o.log_scale};
    r.normalize();
    return r;
  }

  // Pull the largest element magnitude out into the exponent.
  void normalize() {
    const double peak =
        std::max(std::max(std::abs(m.m00), std::abs(m.m01)),
                 std::max(std::abs(m.m10), std::abs(m.m11)));
    if (peak > 0.0 && std::isfinite(peak)) {
      const double s = std::log(peak);
      const double inv = 1.0 / peak;
      m.m00 *= inv;
      m.m01 *= inv;
      m.m10 *= inv;
      m.m11 *= inv;
      log_scale += s;
    }
  }
};

}  // namespace tunnelsim
