#pragma once

#include <complex>

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

// Rectangular potential barrier of height V on a zero-potential background.
struct RectangularBarrier {
  double potential_j = 0.0;  // V > 0
  double length = 0.0;       // L >= 0
  double mass = 0.0;         // m0 > 0

  static RectangularBarrier make(double potential_j, double length,
                                 double mass);
  static RectangularBarrier make_ev(double potential_ev, double length,
                                    double mass);
};

// Transmission amplitude for 0 < E < V, referenced to the barrier faces:
//   t = 1 / (cosh kL + (i/2)(k/k' - k'/k) sinh kL)
// (the textbook e^{-ikL} prefactor belongs to amplitudes referenced in
// global coordinates and is absent here, matching stack_amplitudes).
// Stable for arbitrarily opaque barriers.
std::complex<double> barrier_amplitude(const RectangularBarrier& barrier,
                                       double energy_j);

// Closed-form |t|^2 = 1 / (1 + V^2 sinh^2(kappa L) / (4 E (V - E))).
double barrier_transmission(const RectangularBarrier& barrier,
                            double energy_j);

// Hartman-limit phase time: tau_inf = 2 m0 / (hbar k kappa), independent of
// the barrier length. Valid asymptotically for kappa L >> 1; rejects E within
// 1e-6 (relative to V) of either endpoint, where the expression diverges.
double opaque_phase_time_asymptote(const RectangularBarrier& barrier,
                                   double energy_j);

// The same barrier as a quantum transfer-matrix stack (zero-potential entry
// and exit media), for the solver equivalence checks and Hartman scans.
Stack barrier_stack(const RectangularBarrier& barrier);

}  // namespace tunnelsim
