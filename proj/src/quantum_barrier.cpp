#include "tunnelsim/quantum_barrier.hpp"

#include <cmath>
#include <string>

#include "tunnelsim/constants.hpp"
#include "tunnelsim/errors.hpp"
#include "tunnelsim/wave_core.hpp"

namespace tunnelsim {

namespace {

void check_energy_window(const RectangularBarrier& b, double energy_j) {
  if (!(energy_j > 0.0) || !(energy_j < b.potential_j)) {
    throw DomainError("quantum_barrier: need 0 < E < V, got E = " +
                      std::to_string(constants::joule_to_ev(energy_j)) +
                      " eV, V = " +
                      std::to_string(constants::joule_to_ev(b.potential_j)) +
                      " eV");
  }
}

}  // namespace

RectangularBarrier RectangularBarrier::make(double potential_j, double length,
                                            double mass) {
  if (!(potential_j > 0.0)) {
    throw DomainError("quantum_barrier: V must be positive");
  }
  if (!(length >= 0.0)) {
    throw DomainError("quantum_barrier: L must be >= 0");
  }
  if (!(mass > 0.0)) {
    throw DomainError("quantum_barrier: m0 must be positive");
  }
  return {potential_j, length, mass};
}

RectangularBarrier RectangularBarrier::make_ev(double potential_ev,
                                               double length, double mass) {
  return make(constants::ev_to_joule(potential_ev), length, mass);
}

std::complex<double> barrier_amplitude(const RectangularBarrier& b,
                                       double energy_j) {
  check_energy_window(b, energy_j);
  const double k = std::sqrt(2.0 * b.mass * energy_j) / constants::hbar;
  const double kappa = quantum_kappa(energy_j, b.potential_j, b.mass);
  const double x = kappa * b.length;
  const double a = 0.5 * (kappa / k - k / kappa);
  // t = 1/(cosh x + i a sinh x), written with e^{-x} factored out so the
  // hyperbolics cannot overflow: cosh x + i a sinh x
  //   = (e^x / 2) [(1 + i a) + e^{-2x} (1 - i a)].
  const std::complex<double> ia(0.0, a);
  const double e2 = std::exp(-2.0 * x);
  return 2.0 * std::exp(-x) / ((1.0 + ia) + e2 * (1.0 - ia));
}

double barrier_transmission(const RectangularBarrier& b, double energy_j) {
  check_energy_window(b, energy_j);
  const double kappa = quantum_kappa(energy_j, b.potential_j, b.mass);
  const double sh = std::sinh(kappa * b.length);
  const double denom = 4.0 * energy_j * (b.potential_j - energy_j);
  if (!std::isfinite(sh)) return 0.0;  // opaque beyond double range
  return 1.0 / (1.0 + b.potential_j * b.potential_j * sh * sh / denom);
}

double opaque_phase_time_asymptote(const RectangularBarrier& b,
                                   double energy_j) {
  check_energy_window(b, energy_j);
  const double rel_margin = 1e-6 * b.potential_j;
  if (energy_j < rel_margin || b.potential_j - energy_j < rel_margin) {
    throw DomainError(
        "quantum_barrier: asymptote diverges at the band edges; need E away "
        "from 0 and V by 1e-6 V");
  }
  const double k = std::sqrt(2.0 * b.mass * energy_j) / constants::hbar;
  const double kappa = quantum_kappa(energy_j, b.potential_j, b.mass);
  return 2.0 * b.mass / (constants::hbar * k * kappa);
}

Stack barrier_stack(const RectangularBarrier& b) {
  Stack s;
  s.entry = Medium::quantum(0.0, b.mass);
  s.exit = Medium::quantum(0.0, b.mass);
  s.layers = {Layer{Medium::quantum(b.potential_j, b.mass), b.length, {}}};
  s.polarization = Polarization::Scalar;
  return s;
}

}  // namespace tunnelsim
