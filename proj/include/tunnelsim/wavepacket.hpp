#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

// Band-limited carrier-plus-envelope signal. The complex baseband envelope is
// sampled on a uniform time grid; the spectral representation (analysis
// convention e^{+2 pi i f t}, bin k at offset f_k from the carrier) is kept
// in sync. The full field is env(t) * e^{-2 pi i nu0 t}.
struct Pulse {
  double carrier_hz = 0.0;
  double dt = 0.0;
  std::vector<std::complex<double>> envelope;  // N samples, N a power of two
  std::vector<std::complex<double>> spectrum;  // cached transform
  double bandwidth_hz = 0.0;  // measured half-width at 1e-8 of spectral peak
  double nominal_sigma_t = 0.0;

  std::size_t size() const { return envelope.size(); }
  double time_at(std::size_t i) const { return dt * static_cast<double>(i); }
  // Baseband frequency offset of spectral bin k, in Hz (negative for the
  // upper half of the bin range).
  double offset_hz(std::size_t k) const;
};

// Unit-peak Gaussian envelope centered at N dt / 2 on carrier nu0, with the
// cached spectrum and measured bandwidth. Preconditions: sigma_t >= 10 dt
// (band resolvable) and N dt >= 20 sigma_t (no wraparound).
Pulse synthesize_gaussian(double nu0_hz, double sigma_t, double dt,
                          std::size_t n);

// Rebuild the time samples from the cached spectrum (transform round trip).
std::vector<std::complex<double>> envelope_from_spectrum(const Pulse& pulse);

double pulse_energy_time(const Pulse& pulse);
double pulse_energy_spectral(const Pulse& pulse);

// First sample whose envelope magnitude exceeds rel_threshold * peak.
std::size_t front_index(const Pulse& pulse, double rel_threshold = 1e-6);

// Spectral multiplication by t(omega): every bin covered by the spectrum's
// grid is multiplied by the (cubically interpolated) amplitude; bins outside
// the grid are zeroed and must be below 1e-8 of the spectral peak, otherwise
// the band is not covered and an error is raised. Magnitude and unwrapped
// phase are interpolated separately.
Pulse propagate(const Pulse& pulse, const ComplexSpectrum& spectrum);

struct DelayMeasurement {
  double peak_delay = 0.0;      // s, 3-point parabolic interpolation
  double centroid_delay = 0.0;  // s, |env|^2 first moment
  double correlation = 0.0;     // max normalized cross-correlation, in [0,1]
  double effective_speed = 0.0; // m/s, reference_length / peak_delay
};

DelayMeasurement measure_delay(const Pulse& input, const Pulse& output,
                               double reference_length);

// Per-bin amplitude ratio |out|/|in| over the input's occupied band,
// ordered by absolute frequency.
struct BandOccupancy {
  std::vector<double> frequency_hz;
  std::vector<double> ratio;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

BandOccupancy band_occupancy(const Pulse& input, const Pulse& output);

// Two-column (t_s, |envelope|^2) CSV body for plotting pulse traces.
std::string trace_csv(const Pulse& pulse);

}  // namespace tunnelsim
