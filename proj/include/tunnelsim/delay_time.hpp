#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

enum class DelayMethod { PhaseDerivative, EnergyDerivative };

struct DelayResult {
  double tau = 0.0;             // s
  double omega0 = 0.0;          // rad/s
  DelayMethod method = DelayMethod::PhaseDerivative;
  double step = 0.0;            // differentiation step, rad/s
  double error_estimate = 0.0;  // s
};

// Continuous transmission phase phi(omega) over the spectrum's grid, with
// phi at the first sample in (-pi, pi]. Requires adjacent-sample phase
// differences below pi; a detected jump >= pi raises a grid-too-coarse error
// naming the interval.
std::vector<double> unwrap_phase(const ComplexSpectrum& spectrum);

// Wigner phase time tau = d(arg t)/domega at omega0 (with the e^{-iomega t} /
// e^{+ikz} sign convention used throughout, free propagation over L gives
// tau = +L/c). Central differences on the unwrapped phase at steps h and h/2,
// Richardson-extrapolated; h = 1e-6 * omega0. The error estimate combines
// the step-halving difference with a grid-refinement probe.
DelayResult phase_time(const ComplexSpectrum& spectrum, double omega0);

// Quantum form tau = hbar * d(arg t)/dE evaluated from an amplitude function
// of energy [J]. Same differentiation path as phase_time via E = hbar*omega.
DelayResult energy_phase_time(
    const std::function<std::complex<double>(double)>& amplitude_of_energy,
    double energy0_j);

// Phase time of a stack at omega0, evaluated on an internally built dense
// local grid. Convenience wrapper used by scans and the scenario harness.
DelayResult stack_phase_time(const Stack& stack, double omega0);

// tau / T: the universal-tunneling-time ratio of Table 1.
double universal_ratio(double tau_s, double nu_hz);

struct HartmanPoint {
  double length = 0.0;
  double tau = 0.0;
};

struct HartmanScanResult {
  std::vector<HartmanPoint> points;
  // Relative spread (max-min)/min of tau over the opaque lengths
  // (kappa*L >= 3) when kappa > 0, over all lengths in control mode.
  double spread = 0.0;
  bool saturated = false;
  int opaque_count = 0;
};

// Phase time versus barrier length for a family of stacks. kappa is the
// barrier's decay constant at omega0 and defines which lengths count as
// opaque; it must be positive for a tunneling family. Passing kappa = 0 runs
// the scan in control mode (no tunneling claimed; e.g. a free-space family),
// where the spread is reported over all lengths and saturation is simply
// flagged. A declared tunneling family whose stack does not actually
// attenuate raises a not-a-tunneling-regime error.
HartmanScanResult hartman_scan(const std::function<Stack(double)>& family,
                               std::span<const double> lengths, double omega0,
                               double kappa);

// Goos-Haenchen shift D = -d(arg r)/dk_par of a totally reflected beam,
// positive along the forward beam direction. The reflection coefficient must
// stay unimodular (|r| = 1 within 1e-6) across the differentiation stencil.
double goos_haenchen_shift(
    const std::function<std::complex<double>(double)>& r_of_k_par,
    double k_par0);

// Same, for a stack at angle theta0 (k_par scanned at fixed omega0).
double goos_haenchen_shift(const Stack& stack, double omega0, double theta0);

}  // namespace tunnelsim
