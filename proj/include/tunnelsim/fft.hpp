#pragma once

#include <complex>
#include <vector>

namespace tunnelsim {

// In-place radix-2 transform, sum_n x_n e^{sign * 2 pi i n k / N}, no
// normalization. N must be a power of two. The analysis direction used for
// pulses is sign = +1 (matching the e^{-i omega t} field convention), so the
// synthesis direction is sign = -1 followed by a 1/N.
void fft_radix2(std::vector<std::complex<double>>& data, int sign);

bool is_power_of_two(std::size_t n);

}  // namespace tunnelsim
