#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "tunnelsim/mat2.hpp"
#include "tunnelsim/medium.hpp"

namespace tunnelsim {

enum class Polarization { TE, TM, Scalar };

std::string to_string(Polarization pol);

struct Layer {
  Medium medium;
  double thickness = 0.0;  // m, >= 0; zero thickness acts as identity
  // Fixed transverse wavenumber of a guided-mode section (e.g. the
  // below-cutoff part of a stepped waveguide, where k_par = omega_c/c is set
  // by the cross section, not by the incidence angle). Unset layers inherit
  // the stack-level k_par.
  std::optional<double> transverse_k;
};

// Ordered layers between two semi-infinite media. theta is the incidence
// angle in the entry medium; frozen_k_par, when set, pins the transverse
// wavenumber to one value for every frequency. Spectra taken at conserved
// k_par are what the S-matrix energy derivative acts on; the default
// (angle-derived k_par proportional to omega) describes a collimated
// achromatic beam instead.
struct Stack {
  Medium entry;
  std::vector<Layer> layers;
  Medium exit;
  Polarization polarization = Polarization::Scalar;
  double theta = 0.0;  // rad, in [0, pi/2)
  std::optional<double> frozen_k_par;

  Stack reversed() const;
  double total_thickness() const;
};

// Throws unless media kinds are uniform, the polarization fits the kind
// (TE/TM for optical, Scalar otherwise), thicknesses are >= 0 and theta is
// in range.
void validate(const Stack& stack);

struct StackAmplitudes {
  std::complex<double> r;
  std::complex<double> t;
  double flux_factor = 1.0;  // exit/entry flux normalization ratio
};

// Field-matching matrix: maps (forward, backward) amplitudes in medium b to
// those in medium a at a common interface. det = eta_b/eta_a, the ratio of
// the flux admittances.
Mat2 interface_matrix(const Medium& a, const Medium& b, Polarization pol,
                      double k_par, AngularFrequency omega);

// Propagation across one layer: diag(e^{-i k_z d}, e^{+i k_z d}), unit
// determinant. Real exponentials when the layer is evanescent.
Mat2 layer_matrix(const Layer& layer, AngularFrequency omega, double k_par,
                  Polarization pol);

// Total transfer matrix: (A_entry, B_entry) = M (A_exit, B_exit), amplitudes
// referenced at the stack's front and back faces.
ScaledMat2 stack_matrix(const Stack& stack, AngularFrequency omega);

// Complex reflection/transmission amplitudes of the whole stack, referenced
// to the barrier faces, plus the flux normalization ratio. For a lossless
// stack |r|^2 + flux_factor*|t|^2 = 1 at every propagating frequency.
StackAmplitudes stack_amplitudes(const Stack& stack, AngularFrequency omega);

// Reflection coefficient alone. The entry medium must be propagating; the
// exit side may be evanescent (total reflection), in which case |r| = 1.
std::complex<double> reflection_amplitude(const Stack& stack,
                                          AngularFrequency omega);

// Frequency grid plus the complex amplitudes on it.
struct ComplexSpectrum {
  std::vector<double> grid;  // rad/s, strictly increasing
  std::vector<std::complex<double>> r;
  std::vector<std::complex<double>> t;
  std::vector<double> flux_factor;

  std::size_t size() const { return grid.size(); }
};

// Batch evaluation of stack_amplitudes over a strictly increasing grid.
// Sample results are identical to individual calls; failures are reported
// with the offending sample index. Honors the TUNNELSIM_THREADS environment
// variable for parallel evaluation (deterministic output either way).
ComplexSpectrum transmission_spectrum(const Stack& stack,
                                      std::span<const double> grid);

}  // namespace tunnelsim
