#pragma once

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

// Frustrated total internal reflection across a low-index gap between two
// identical high-index guides (prisms or fiber cores).
struct FtirConfig {
  double n_gap = 1.0;    // gap index (air), < n_guide
  double n_guide = 1.5;  // prism/fiber index
  double theta = 0.0;    // incidence angle in the guide, rad
  double gap = 0.0;      // m, >= 0
  double lambda0 = 0.0;  // vacuum wavelength, m
  Polarization polarization = Polarization::TE;

  static FtirConfig make(double n_gap, double n_guide, double theta_rad,
                         double gap_m, double lambda0_m,
                         Polarization pol = Polarization::TE);

  double omega() const;           // 2 pi c / lambda0
  double critical_angle() const;  // arcsin(n_gap / n_guide)
  FtirConfig with_gap(double gap_m) const;
};

// Evanescent decay constant in the gap:
//   kappa = (omega/c) sqrt(n_guide^2 sin^2(theta) - n_gap^2).
// Zero exactly at the critical angle; below it the geometry is not totally
// reflecting and an error is raised.
double ftir_kappa(const FtirConfig& cfg);

// Stationary intensity ratio I_t/I_0 = e^{-2 kappa gap} of the exponential
// decay law (asymptotic in the exponent; the exact prefactor comes from
// double_prism_amplitudes).
double gap_transmittance(const FtirConfig& cfg);

// Exact two-interface solution, evaluated with the transfer matrix at
// conserved k_par = (omega/c) n_guide sin(theta). |r|^2 + |t|^2 = 1.
StackAmplitudes double_prism_amplitudes(const FtirConfig& cfg);

// The gap as a transfer-matrix stack (guide | gap | guide) with k_par frozen
// at the configured angle, so delay-time spectra follow the conserved
// transverse momentum.
Stack double_prism_stack(const FtirConfig& cfg);

// Power fraction coupled across the gap, |t|^2; the inter-guide distance
// sets the coupling ratio. Monotone decreasing in the gap.
double coupler_ratio(const FtirConfig& cfg);

// Inverse design: the gap for which coupler_ratio equals target, by bisection
// to 1e-4 relative tolerance. cfg.gap is ignored.
double solve_gap_for_ratio(const FtirConfig& cfg, double target);

}  // namespace tunnelsim
