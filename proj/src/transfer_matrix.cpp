#include "tunnelsim/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "tunnelsim/constants.hpp"
#include "tunnelsim/errors.hpp"
#include "tunnelsim/wave_core.hpp"

namespace tunnelsim {

namespace {

// Weight of the derivative in the matching conditions (u, u'/w continuous):
// TE matches E_y, E_y'; TM matches H_y, H_y'/n^2; the Schroedinger equation
// matches psi, psi'/m; pressure acoustics matches p, p'/rho.
double derivative_weight(const Medium& medium, Polarization pol) {
  switch (medium.kind()) {
    case MediumKind::Optical: {
      if (pol == Polarization::TM) {
        const double n = medium.refractive_index();
        return n * n;
      }
      return 1.0;
    }
    case MediumKind::Quantum:
      return medium.mass();
    case MediumKind::Acoustic:
      return medium.density();
  }
  return 1.0;
}

std::complex<double> admittance(const Medium& medium, Polarization pol,
                                double k_par, AngularFrequency omega) {
  const WaveNumber kz = propagating_wavenumber(omega, medium, k_par);
  return kz.value() / derivative_weight(medium, pol);
}

void check_polarization(const Medium& medium, Polarization pol,
                        const char* where) {
  const bool optical = medium.kind() == MediumKind::Optical;
  const bool scalar = pol == Polarization::Scalar;
  if (optical == scalar) {
    throw IncompatibleMediaError(
        std::string(where) + ": polarization " + to_string(pol) +
        " does not fit a " + to_string(medium.kind()) + " medium");
  }
}

// Layer factor with the exponential growth separated out:
// diag(e^{-i kz d}, e^{+i kz d}) = e^{s} diag(e^{-i kz d - s}, e^{+i kz d - s})
// with s = |Im kz| d, so both stored entries have magnitude <= 1.
ScaledMat2 scaled_layer_matrix(const Layer& layer, AngularFrequency omega,
                               double k_par) {
  const WaveNumber kz =
      propagating_wavenumber(omega, layer.medium, k_par);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> phase = i * kz.value() * layer.thickness;
  const double s = std::abs(phase.real());
  ScaledMat2 out;
  out.m = Mat2{std::exp(-phase - s), 0.0, 0.0, std::exp(phase - s)};
  out.log_scale = s;
  return out;
}

double resolve_k_par(const Stack& stack, AngularFrequency omega) {
  if (stack.frozen_k_par) return *stack.frozen_k_par;
  const double k_entry =
      std::abs(propagating_wavenumber(omega, stack.entry, 0.0).value());
  return k_entry * std::sin(stack.theta);
}

double layer_k_par(const Layer& layer, double stack_k_par) {
  return layer.transverse_k.value_or(stack_k_par);
}

unsigned thread_count() {
  if (const char* env = std::getenv("TUNNELSIM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 1) return static_cast<unsigned>(std::min<long>(n, 64));
  }
  return 1;
}

}  // namespace

std::string to_string(Polarization pol) {
  switch (pol) {
    case Polarization::TE:
      return "TE";
    case Polarization::TM:
      return "TM";
    case Polarization::Scalar:
      return "scalar";
  }
  return "unknown";
}

Stack Stack::reversed() const {
  Stack r = *this;
  r.entry = exit;
  r.exit = entry;
  r.layers.assign(layers.rbegin(), layers.rend());
  return r;
}

double Stack::total_thickness() const {
  double sum = 0.0;
  for (const Layer& l : layers) sum += l.thickness;
  return sum;
}

void validate(const Stack& stack) {
  check_polarization(stack.entry, stack.polarization, "stack");
  if (!stack.entry.same_kind(stack.exit)) {
    throw IncompatibleMediaError("stack: entry is " +
                                 to_string(stack.entry.kind()) + ", exit is " +
                                 to_string(stack.exit.kind()));
  }
  for (std::size_t i = 0; i < stack.layers.size(); ++i) {
    const Layer& l = stack.layers[i];
    if (!l.medium.same_kind(stack.entry)) {
      throw IncompatibleMediaError("stack: layer " + std::to_string(i) +
                                   " is " + to_string(l.medium.kind()) +
                                   " in a " + to_string(stack.entry.kind()) +
                                   " stack");
    }
    if (!(l.thickness >= 0.0) || !std::isfinite(l.thickness)) {
      throw DomainError("stack: layer " + std::to_string(i) +
                        " thickness must be >= 0");
    }
    if (l.transverse_k && *l.transverse_k < 0.0) {
      throw DomainError("stack: layer " + std::to_string(i) +
                        " transverse_k must be >= 0");
    }
  }
  if (!(stack.theta >= 0.0) || !(stack.theta < constants::pi / 2.0)) {
    throw DomainError("stack: theta must be in [0, pi/2), got " +
                      std::to_string(stack.theta));
  }
  if (stack.frozen_k_par && *stack.frozen_k_par < 0.0) {
    throw DomainError("stack: frozen_k_par must be >= 0");
  }
}

Mat2 interface_matrix(const Medium& a, const Medium& b, Polarization pol,
                      double k_par, AngularFrequency omega) {
  if (!a.same_kind(b)) {
    throw IncompatibleMediaError("interface: cannot match a " +
                                 to_string(a.kind()) + " medium against a " +
                                 to_string(b.kind()) + " medium");
  }
  check_polarization(a, pol, "interface");
  const std::complex<double> ratio =
      admittance(b, pol, k_par, omega) / admittance(a, pol, k_par, omega);
  const std::complex<double> p = 0.5 * (1.0 + ratio);
  const std::complex<double> q = 0.5 * (1.0 - ratio);
  return {p, q, q, p};
}

Mat2 layer_matrix(const Layer& layer, AngularFrequency omega, double k_par,
                  Polarization pol) {
  check_polarization(layer.medium, pol, "layer");
  if (!(layer.thickness >= 0.0)) {
    throw DomainError("layer: thickness must be >= 0");
  }
  const ScaledMat2 s =
      scaled_layer_matrix(layer, omega, layer_k_par(layer, k_par));
  const double scale = std::exp(s.log_scale);
  return {s.m.m00 * scale, 0.0, 0.0, s.m.m11 * scale};
}

ScaledMat2 stack_matrix(const Stack& stack, AngularFrequency omega) {
  validate(stack);
  const double k_par = resolve_k_par(stack, omega);
  const Polarization pol = stack.polarization;
  const std::size_t n = stack.layers.size();

  auto medium_at = [&](std::size_t j) -> const Medium& {
    if (j == 0) return stack.entry;
    if (j == n + 1) return stack.exit;
    return stack.layers[j - 1].medium;
  };
  auto k_par_at = [&](std::size_t j) -> double {
    if (j == 0 || j == n + 1) return k_par;
    return layer_k_par(stack.layers[j - 1], k_par);
  };

  // M = I_{0,1} P_1 I_{1,2} ... P_n I_{n,n+1}, accumulated back to front.
  ScaledMat2 total = ScaledMat2::identity();
  for (std::size_t j = n + 1; j >= 1; --j) {
    // Interface between media j-1 and j, expressed in each side's own
    // transverse wavenumber (they coincide except at guided-mode steps).
    const std::complex<double> eta_left =
        admittance(medium_at(j - 1), pol, k_par_at(j - 1), omega);
    const std::complex<double> eta_right =
        admittance(medium_at(j), pol, k_par_at(j), omega);
    const std::complex<double> ratio = eta_right / eta_left;
    ScaledMat2 iface;
    iface.m = Mat2{0.5 * (1.0 + ratio), 0.5 * (1.0 - ratio),
                   0.5 * (1.0 - ratio), 0.5 * (1.0 + ratio)};
    total = iface * total;
    if (j - 1 >= 1) {
      total = scaled_layer_matrix(stack.layers[j - 2], omega,
                                  k_par_at(j - 1)) *
              total;
    }
  }
  return total;
}

StackAmplitudes stack_amplitudes(const Stack& stack, AngularFrequency omega) {
  if (!(omega.rad_per_s() > 0.0)) {
    throw DomainError("stack: omega must be positive");
  }
  validate(stack);
  const double k_par = resolve_k_par(stack, omega);

  const WaveNumber kz_in =
      propagating_wavenumber(omega, stack.entry, k_par);
  const WaveNumber kz_out = propagating_wavenumber(omega, stack.exit, k_par);
  if (!kz_in.propagating() || kz_in.value() == std::complex<double>(0.0) ||
      !kz_out.propagating() || kz_out.value() == std::complex<double>(0.0)) {
    throw DomainError(
        "stack: entry or exit medium is evanescent at omega = " +
        std::to_string(omega.rad_per_s()) +
        " rad/s; no asymptotic propagating states");
  }

  const ScaledMat2 m = stack_matrix(stack, omega);
  StackAmplitudes out;
  out.r = m.m.m10 / m.m.m00;
  // t = 1 / (m00 e^{log_scale}); the scale factor alone can underflow to a
  // clean zero for extremely opaque stacks.
  out.t = std::exp(-m.log_scale) / m.m.m00;

  const double w_in = derivative_weight(stack.entry, stack.polarization);
  const double w_out = derivative_weight(stack.exit, stack.polarization);
  out.flux_factor = (kz_out.value().real() / w_out) /
                    (kz_in.value().real() / w_in);
  return out;
}

std::complex<double> reflection_amplitude(const Stack& stack,
                                          AngularFrequency omega) {
  if (!(omega.rad_per_s() > 0.0)) {
    throw DomainError("stack: omega must be positive");
  }
  validate(stack);
  const double k_par = resolve_k_par(stack, omega);
  const WaveNumber kz_in = propagating_wavenumber(omega, stack.entry, k_par);
  if (!kz_in.propagating() || kz_in.value() == std::complex<double>(0.0)) {
    throw DomainError("stack: entry medium is evanescent at omega = " +
                      std::to_string(omega.rad_per_s()) + " rad/s");
  }
  const ScaledMat2 m = stack_matrix(stack, omega);
  return m.m.m10 / m.m.m00;
}

ComplexSpectrum transmission_spectrum(const Stack& stack,
                                      std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw GridError("spectrum: grid must be strictly increasing (sample " +
                      std::to_string(i) + ")");
    }
  }
  ComplexSpectrum spec;
  spec.grid.assign(grid.begin(), grid.end());
  spec.r.resize(grid.size());
  spec.t.resize(grid.size());
  spec.flux_factor.resize(grid.size());

  auto eval_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const StackAmplitudes a =
            stack_amplitudes(stack, AngularFrequency::from_rad_per_s(grid[i]));
        spec.r[i] = a.r;
        spec.t[i] = a.t;
        spec.flux_factor[i] = a.flux_factor;
      } catch (const Error& e) {
        throw DomainError("spectrum: sample " + std::to_string(i) +
                          " (omega = " + std::to_string(grid[i]) +
                          " rad/s): " + e.what());
      }
    }
  };

  const unsigned workers = thread_count();
  if (workers <= 1 || grid.size() < 2 * workers) {
    eval_range(0, grid.size());
    return spec;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  for (unsigned wi = 0; wi < workers; ++wi) {
    const std::size_t begin = wi * chunk;
    const std::size_t end = std::min(grid.size(), begin + chunk);
    pool.emplace_back([&, wi, begin, end] {
      try {
        eval_range(begin, end);
      } catch (...) {
        errors[wi] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return spec;
}

}  // namespace tunnelsim
