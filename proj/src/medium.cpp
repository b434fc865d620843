#include "tunnelsim/medium.hpp"

#include <cmath>

#include "tunnelsim/constants.hpp"

namespace tunnelsim {

std::string to_string(MediumKind kind) {
  switch (kind) {
    case MediumKind::Optical:
      return "optical";
    case MediumKind::Quantum:
      return "quantum";
    case MediumKind::Acoustic:
      return "acoustic";
  }
  return "unknown";
}

Medium Medium::optical(double refractive_index) {
  if (!(refractive_index > 0.0) || !std::isfinite(refractive_index)) {
    throw DomainError("medium: refractive index must be positive, got " +
                      std::to_string(refractive_index));
  }
  Medium m;
  m.kind_ = MediumKind::Optical;
  m.refractive_index_ = refractive_index;
  return m;
}

Medium Medium::quantum(double potential_j, double mass_kg) {
  if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
    throw DomainError("medium: particle mass must be positive, got " +
                      std::to_string(mass_kg));
  }
  if (!std::isfinite(potential_j)) {
    throw DomainError("medium: potential must be finite");
  }
  Medium m;
  m.kind_ = MediumKind::Quantum;
  m.potential_ = potential_j;
  m.mass_ = mass_kg;
  return m;
}

Medium Medium::quantum_ev(double potential_ev, double mass_kg) {
  return quantum(constants::ev_to_joule(potential_ev), mass_kg);
}

Medium Medium::acoustic(double sound_speed, double density) {
  if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
    throw DomainError("medium: sound speed must be positive, got " +
                      std::to_string(sound_speed));
  }
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw DomainError("medium: density must be positive, got " +
                      std::to_string(density));
  }
  Medium m;
  m.kind_ = MediumKind::Acoustic;
  m.sound_speed_ = sound_speed;
  m.density_ = density;
  return m;
}

double Medium::refractive_index() const {
  if (kind_ != MediumKind::Optical)
    throw Error("medium: refractive index requested for a " +
                to_string(kind_) + " medium");
  return refractive_index_;
}

double Medium::potential() const {
  if (kind_ != MediumKind::Quantum)
    throw Error("medium: potential requested for a " + to_string(kind_) +
                " medium");
  return potential_;
}

double Medium::mass() const {
  if (kind_ != MediumKind::Quantum)
    throw Error("medium: mass requested for a " + to_string(kind_) +
                " medium");
  return mass_;
}

double Medium::sound_speed() const {
  if (kind_ != MediumKind::Acoustic)
    throw Error("medium: sound speed requested for a " + to_string(kind_) +
                " medium");
  return sound_speed_;
}

double Medium::density() const {
  if (kind_ != MediumKind::Acoustic)
    throw Error("medium: density requested for a " + to_string(kind_) +
                " medium");
  return density_;
}

AngularFrequency AngularFrequency::from_rad_per_s(double omega) {
  if (omega < 0.0 || !std::isfinite(omega)) {
    throw DomainError("frequency: omega must be >= 0, got " +
                      std::to_string(omega));
  }
  return AngularFrequency(omega);
}

AngularFrequency AngularFrequency::from_hz(double nu) {
  return from_rad_per_s(2.0 * constants::pi * nu);
}

AngularFrequency AngularFrequency::from_period(double period_s) {
  if (!(period_s > 0.0)) {
    throw DomainError("frequency: period must be positive, got " +
                      std::to_string(period_s));
  }
  return AngularFrequency(2.0 * constants::pi / period_s);
}

double AngularFrequency::hz() const { return omega_ / (2.0 * constants::pi); }

double AngularFrequency::period() const {
  if (!(omega_ > 0.0)) {
    throw DomainError("frequency: period requested at omega = 0");
  }
  return 2.0 * constants::pi / omega_;
}

WaveNumber::WaveNumber(std::complex<double> value) : value_(value) {
  const double re = std::abs(value.real());
  const double im = std::abs(value.imag());
  const double mag = std::abs(value);
  constexpr double tol = 1e-12;
  if (re <= tol * mag) {
    value_ = {0.0, value.imag() < 0.0 ? -value.imag() : value.imag()};
  } else if (im <= tol * mag) {
    value_ = {value.real(), 0.0};
  } else {
    throw UnsupportedError(
        "wavenumber: genuinely complex value (lossy medium) is unsupported");
  }
}

}  // namespace tunnelsim
