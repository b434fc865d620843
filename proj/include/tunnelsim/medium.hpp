#pragma once

#include <complex>
#include <string>

#include "tunnelsim/errors.hpp"

namespace tunnelsim {

enum class MediumKind { Optical, Quantum, Acoustic };

std::string to_string(MediumKind kind);

// One homogeneous, lossless material. Exactly one parameter set is
// meaningful per instance, selected by kind():
//   Optical   refractive index n
//   Quantum   potential V [J] and particle rest mass m0 [kg]
//   Acoustic  sound speed v_s [m/s] and mass density rho [kg/m^3]
class Medium {
 public:
  Medium() : refractive_index_(1.0) {}  // vacuum

  static Medium optical(double refractive_index);
  static Medium quantum(double potential_j, double mass_kg);
  static Medium quantum_ev(double potential_ev, double mass_kg);
  static Medium acoustic(double sound_speed, double density);

  MediumKind kind() const { return kind_; }
  bool same_kind(const Medium& other) const { return kind_ == other.kind_; }

  double refractive_index() const;
  double potential() const;
  double mass() const;
  double sound_speed() const;
  double density() const;

  bool operator==(const Medium& other) const = default;

 private:
  MediumKind kind_ = MediumKind::Optical;
  double refractive_index_ = 0.0;
  double potential_ = 0.0;
  double mass_ = 0.0;
  double sound_speed_ = 0.0;
  double density_ = 0.0;
};

// Angular frequency with the derived quantities the tables use:
// nu = omega/2pi and the oscillation period T = 1/nu.
class AngularFrequency {
 public:
  static AngularFrequency from_rad_per_s(double omega);
  static AngularFrequency from_hz(double nu);
  static AngularFrequency from_period(double period_s);

  double rad_per_s() const { return omega_; }
  double hz() const;
  double period() const;  // requires omega > 0

 private:
  explicit AngularFrequency(double omega) : omega_(omega) {}
  double omega_ = 0.0;
};

// Complex wavenumber restricted to the lossless cases: purely real
// (propagating) or purely imaginary (evanescent, Im k = kappa > 0).
class WaveNumber {
 public:
  explicit WaveNumber(std::complex<double> value);

  std::complex<double> value() const { return value_; }
  bool propagating() const { return value_.imag() == 0.0; }
  bool evanescent() const { return value_.imag() != 0.0; }
  double kappa() const { return std::abs(value_.imag()); }

 private:
  std::complex<double> value_;
};

}  // namespace tunnelsim
