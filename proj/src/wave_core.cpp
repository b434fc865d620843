#include "tunnelsim/wave_core.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "tunnelsim/constants.hpp"

namespace tunnelsim {

namespace {

// k^2 in the medium; may be negative for quantum media below the potential.
double k_squared(const Medium& medium, double omega) {
  using namespace constants;
  switch (medium.kind()) {
    case MediumKind::Optical: {
      const double k = medium.refractive_index() * omega / speed_of_light;
      return k * k;
    }
    case MediumKind::Quantum: {
      const double energy = hbar * omega;
      return 2.0 * medium.mass() * (energy - medium.potential()) /
             (hbar * hbar);
    }
    case MediumKind::Acoustic: {
      const double k = omega / medium.sound_speed();
      return k * k;
    }
  }
  return 0.0;
}

}  // namespace

WaveNumber propagating_wavenumber(AngularFrequency omega, const Medium& medium,
                                  double k_par) {
  if (k_par < 0.0) {
    throw DomainError("wave_core: k_par must be >= 0, got " +
                      std::to_string(k_par));
  }
  const double kz2 = k_squared(medium, omega.rad_per_s()) - k_par * k_par;
  if (kz2 >= 0.0) return WaveNumber(std::complex<double>(std::sqrt(kz2), 0.0));
  return WaveNumber(std::complex<double>(0.0, std::sqrt(-kz2)));
}

double waveguide_kappa(AngularFrequency omega, AngularFrequency cutoff) {
  const double w = omega.rad_per_s();
  const double wc = cutoff.rad_per_s();
  if (w > wc) {
    throw DomainError(
        "wave_core: omega above cutoff is the propagating regime; use "
        "propagating_wavenumber");
  }
  return std::sqrt((wc - w) * (wc + w)) / constants::speed_of_light;
}

double quantum_kappa(double energy_j, double potential_j, double mass_kg) {
  if (!(mass_kg > 0.0)) {
    throw DomainError("wave_core: mass must be positive");
  }
  if (energy_j < 0.0) {
    throw DomainError("wave_core: energy must be >= 0");
  }
  if (energy_j > potential_j) {
    throw DomainError("wave_core: E > V is the propagating regime");
  }
  return std::sqrt(2.0 * mass_kg * (potential_j - energy_j)) / constants::hbar;
}

double energy_relation_residual(const WaveNumber& k, double mass_kg,
                                double energy_j) {
  using namespace constants;
  const double hkc = hbar * std::abs(k.value()) * speed_of_light;
  const double sign = k.propagating() ? 1.0 : -1.0;
  const double rest = mass_kg * speed_of_light * speed_of_light;
  return energy_j * energy_j - (sign * hkc * hkc + rest * rest);
}

}  // namespace tunnelsim
