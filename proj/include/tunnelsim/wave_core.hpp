#pragma once

#include "tunnelsim/medium.hpp"

namespace tunnelsim {

// Longitudinal wavenumber k_z for a plane wave of angular frequency omega in
// the given medium, with transverse wavenumber k_par conserved across
// interfaces. Returns the evanescent branch (k_z = i*kappa, kappa > 0) when
// k_par^2 exceeds k^2 or, for quantum media, when E = hbar*omega < V.
//
// Dispersion per kind:
//   optical   k = n omega / c
//   quantum   k = sqrt(2 m0 (hbar omega - V)) / hbar
//   acoustic  k = omega / v_s
WaveNumber propagating_wavenumber(AngularFrequency omega, const Medium& medium,
                                  double k_par);

// Decay constant of a hollow waveguide operated at or below its cutoff:
// kappa = sqrt(omega_c^2 - omega^2) / c. Rejects omega > omega_c; use
// propagating_wavenumber with k_par = omega_c/c above cutoff.
double waveguide_kappa(AngularFrequency omega, AngularFrequency cutoff);

// Decay constant under a rectangular potential barrier:
// kappa = sqrt(2 m0 (V - E)) / hbar for 0 <= E <= V.
double quantum_kappa(double energy_j, double potential_j, double mass_kg);

// Formal residual of E^2 = (hbar k c)^2 + (m0 c^2)^2, with the (hbar k c)^2
// term entering negatively for an imaginary wavenumber. Zero for a consistent
// propagating mode; for evanescent modes the returned value is the
// (hbar kappa c)^2 deficit. Units J^2.
double energy_relation_residual(const WaveNumber& k, double mass_kg,
                                double energy_j);

}  // namespace tunnelsim
