#include "tunnelsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tunnelsim/constants.hpp"
#include "tunnelsim/delay_time.hpp"
#include "tunnelsim/csv.hpp"
#include "tunnelsim/errors.hpp"
#include "tunnelsim/fft.hpp"

namespace tunnelsim {

namespace {

constexpr double kBandLevel = 1e-8;  // band edge relative to spectral peak

double spectral_peak(const std::vector<std::complex<double>>& spectrum) {
  double peak = 0.0;
  for (const auto& v : spectrum) peak = std::max(peak, std::abs(v));
  return peak;
}

void refresh_spectrum_metadata(Pulse& p) {
  const double peak = spectral_peak(p.spectrum);
  double band = 0.0;
  for (std::size_t k = 0; k < p.spectrum.size(); ++k) {
    if (std::abs(p.spectrum[k]) >= kBandLevel * peak) {
      band = std::max(band, std::abs(p.offset_hz(k)));
    }
  }
  p.bandwidth_hz = band;
}

// 4-point Lagrange interpolation (shared shape with the delay module, kept
// local to avoid exposing it as API).
double interp_cubic(const std::vector<double>& xs, const std::vector<double>& ys,
                    double x) {
  const std::size_t n = xs.size();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  i = (i == 0) ? 0 : i - 1;
  std::size_t s = (i == 0) ? 0 : i - 1;
  if (s + 3 >= n) s = n - 4;
  double acc = 0.0;
  for (std::size_t a = s; a < s + 4; ++a) {
    double w = 1.0;
    for (std::size_t b = s; b < s + 4; ++b) {
      if (a != b) w *= (x - xs[b]) / (xs[a] - xs[b]);
    }
    acc += w * ys[a];
  }
  return acc;
}

double parabolic_peak_time(const std::vector<std::complex<double>>& env,
                           double dt) {
  std::size_t imax = 0;
  double vmax = -1.0;
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double a = std::abs(env[i]);
    if (a > vmax) {
      vmax = a;
      imax = i;
    }
    vmin = std::min(vmin, a);
  }
  if (!(vmax > 0.0) || vmax - vmin <= 1e-12 * vmax) {
    throw MeasurementError("measure_delay: flat envelope, no peak to locate");
  }
  if (imax == 0 || imax + 1 == env.size()) {
    throw MeasurementError("measure_delay: envelope peak at the grid edge");
  }
  const double y0 = std::abs(env[imax - 1]);
  const double y1 = vmax;
  const double y2 = std::abs(env[imax + 1]);
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = (denom != 0.0) ? 0.5 * (y0 - y2) / denom : 0.0;
  return (static_cast<double>(imax) + shift) * dt;
}

}  // namespace

double Pulse::offset_hz(std::size_t k) const {
  const std::size_t n = size();
  const double f = static_cast<double>(k) / (dt * static_cast<double>(n));
  if (k <= n / 2) return f;
  return f - 1.0 / dt;
}

Pulse synthesize_gaussian(double nu0_hz, double sigma_t, double dt,
                          std::size_t n) {
  if (!(nu0_hz > 0.0)) {
    throw ConfigError("pulse: carrier nu0 must be positive");
  }
  if (!is_power_of_two(n) || n < 8) {
    throw ConfigError("pulse: sample count must be a power of two >= 8");
  }
  if (!(dt > 0.0)) {
    throw ConfigError("pulse: dt must be positive");
  }
  if (!(sigma_t >= 10.0 * dt)) {
    throw ConfigError("pulse: sigma_t must be >= 10 dt (sigma_t = " +
                      std::to_string(sigma_t) + ", dt = " + std::to_string(dt) +
                      ")");
  }
  if (!(static_cast<double>(n) * dt >= 20.0 * sigma_t)) {
    throw ConfigError("pulse: window N dt must be >= 20 sigma_t to avoid "
                      "wraparound");
  }

  Pulse p;
  p.carrier_hz = nu0_hz;
  p.dt = dt;
  p.nominal_sigma_t = sigma_t;
  p.envelope.resize(n);
  const double tc = 0.5 * static_cast<double>(n) * dt;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (p.time_at(i) - tc) / sigma_t;
    p.envelope[i] = std::exp(-0.5 * u * u);
  }
  p.spectrum = p.envelope;
  fft_radix2(p.spectrum, +1);
  refresh_spectrum_metadata(p);
  return p;
}

std::vector<std::complex<double>> envelope_from_spectrum(const Pulse& pulse) {
  std::vector<std::complex<double>> time = pulse.spectrum;
  fft_radix2(time, -1);
  const double inv = 1.0 / static_cast<double>(time.size());
  for (auto& v : time) v *= inv;
  return time;
}

double pulse_energy_time(const Pulse& pulse) {
  double e = 0.0;
  for (const auto& v : pulse.envelope) e += std::norm(v);
  return e * pulse.dt;
}

double pulse_energy_spectral(const Pulse& pulse) {
  double e = 0.0;
  for (const auto& v : pulse.spectrum) e += std::norm(v);
  return e * pulse.dt / static_cast<double>(pulse.size());
}

std::size_t front_index(const Pulse& pulse, double rel_threshold) {
  double peak = 0.0;
  for (const auto& v : pulse.envelope) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < pulse.size(); ++i) {
    if (std::abs(pulse.envelope[i]) > rel_threshold * peak) return i;
  }
  return pulse.size();
}

Pulse propagate(const Pulse& pulse, const ComplexSpectrum& spectrum) {
  if (spectrum.size() < 4) {
    throw GridError("propagate: spectrum needs at least 4 samples");
  }
  const double peak = spectral_peak(pulse.spectrum);

  // Interpolate |t| and the unwrapped phase separately.
  std::vector<double> mag(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    mag[i] = std::abs(spectrum.t[i]);
  }
  const std::vector<double> phase = unwrap_phase(spectrum);

  Pulse out = pulse;
  for (std::size_t k = 0; k < pulse.spectrum.size(); ++k) {
    const double omega =
        2.0 * constants::pi * (pulse.carrier_hz + pulse.offset_hz(k));
    const bool covered =
        omega >= spectrum.grid.front() && omega <= spectrum.grid.back();
    if (!covered) {
      if (std::abs(pulse.spectrum[k]) >= kBandLevel * peak) {
        throw CoverageError(
            "propagate: occupied bin at " +
            std::to_string(omega / (2.0 * constants::pi)) +
            " Hz falls outside the spectrum grid [" +
            std::to_string(spectrum.grid.front() / (2.0 * constants::pi)) +
            ", " +
            std::to_string(spectrum.grid.back() / (2.0 * constants::pi)) +
            "] Hz");
      }
      out.spectrum[k] = 0.0;
      continue;
    }
    const double m = interp_cubic(spectrum.grid, mag, omega);
    const double ph = interp_cubic(spectrum.grid, phase, omega);
    out.spectrum[k] = pulse.spectrum[k] * std::polar(m, ph);
  }
  out.envelope = envelope_from_spectrum(out);
  refresh_spectrum_metadata(out);
  return out;
}

DelayMeasurement measure_delay(const Pulse& input, const Pulse& output,
                               double reference_length) {
  if (input.size() != output.size() || input.dt != output.dt) {
    throw MeasurementError("measure_delay: pulses must share one time grid");
  }
  if (!(reference_length > 0.0)) {
    throw DomainError("measure_delay: reference length must be positive");
  }

  DelayMeasurement m;
  m.peak_delay = parabolic_peak_time(output.envelope, output.dt) -
                 parabolic_peak_time(input.envelope, input.dt);

  auto centroid = [](const Pulse& p) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double w = std::norm(p.envelope[i]);
      num += w * p.time_at(i);
      den += w;
    }
    return num / den;
  };
  m.centroid_delay = centroid(output) - centroid(input);

  // Max of the normalized cross-correlation of |envelope|.
  const std::size_t n = input.size();
  std::vector<double> a(n), b(n);
  double ea = 0.0, eb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::abs(input.envelope[i]);
    b[i] = std::abs(output.envelope[i]);
    ea += a[i] * a[i];
    eb += b[i] * b[i];
  }
  const double norm = std::sqrt(ea * eb);
  double best = 0.0;
  for (std::ptrdiff_t lag = -static_cast<std::ptrdiff_t>(n) + 1;
       lag < static_cast<std::ptrdiff_t>(n); ++lag) {
    double acc = 0.0;
    const std::size_t lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, -lag));
    const std::size_t hi = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(n) - lag));
    for (std::size_t i = lo; i < hi; ++i) {
      acc += a[i] * b[static_cast<std::size_t>(
                        static_cast<std::ptrdiff_t>(i) + lag)];
    }
    best = std::max(best, acc);
  }
  m.correlation = (norm > 0.0) ? best / norm : 0.0;

  m.effective_speed = (m.peak_delay != 0.0)
                          ? reference_length / m.peak_delay
                          : std::numeric_limits<double>::infinity();
  return m;
}

std::string trace_csv(const Pulse& pulse) {
  std::string out = "t_s,env2\n";
  for (std::size_t i = 0; i < pulse.size(); ++i) {
    out += format_number(pulse.time_at(i)) + "," +
           format_number(std::norm(pulse.envelope[i])) + "\n";
  }
  return out;
}

BandOccupancy band_occupancy(const Pulse& input, const Pulse& output) {
  if (input.size() != output.size() || input.dt != output.dt) {
    throw MeasurementError("band_occupancy: pulses must share one time grid");
  }
  const double peak = spectral_peak(input.spectrum);

  std::vector<std::pair<double, double>> rows;
  for (std::size_t k = 0; k < input.size(); ++k) {
    const double in_mag = std::abs(input.spectrum[k]);
    if (in_mag < kBandLevel * peak) continue;
    rows.emplace_back(input.carrier_hz + input.offset_hz(k),
                      std::abs(output.spectrum[k]) / in_mag);
  }
  std::sort(rows.begin(), rows.end());

  BandOccupancy occ;
  occ.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [f, r] : rows) {
    occ.frequency_hz.push_back(f);
    occ.ratio.push_back(r);
    occ.min_ratio = std::min(occ.min_ratio, r);
    occ.max_ratio = std::max(occ.max_ratio, r);
  }
  return occ;
}

}  // namespace tunnelsim
