#include "tunnelsim/ftir.hpp"

#include <cmath>
#include <string>

#include "tunnelsim/constants.hpp"
#include "tunnelsim/errors.hpp"

namespace tunnelsim {

FtirConfig FtirConfig::make(double n_gap, double n_guide, double theta_rad,
                            double gap_m, double lambda0_m, Polarization pol) {
  if (!(n_gap > 0.0) || !(n_guide > n_gap)) {
    throw ConfigError("ftir: need n_guide > n_gap > 0, got n_gap = " +
                      std::to_string(n_gap) + ", n_guide = " +
                      std::to_string(n_guide));
  }
  if (!(theta_rad > 0.0) || !(theta_rad <= constants::pi / 2.0)) {
    throw ConfigError("ftir: theta must be in (0, pi/2]");
  }
  if (!(gap_m >= 0.0)) {
    throw ConfigError("ftir: gap must be >= 0");
  }
  if (!(lambda0_m > 0.0)) {
    throw ConfigError("ftir: lambda0 must be positive");
  }
  if (pol == Polarization::Scalar) {
    throw ConfigError("ftir: polarization must be TE or TM");
  }
  return {n_gap, n_guide, theta_rad, gap_m, lambda0_m, pol};
}

double FtirConfig::omega() const {
  return 2.0 * constants::pi * constants::speed_of_light / lambda0;
}

double FtirConfig::critical_angle() const {
  return std::asin(n_gap / n_guide);
}

FtirConfig FtirConfig::with_gap(double gap_m) const {
  FtirConfig out = *this;
  if (!(gap_m >= 0.0)) throw ConfigError("ftir: gap must be >= 0");
  out.gap = gap_m;
  return out;
}

double ftir_kappa(const FtirConfig& cfg) {
  const double s = cfg.n_guide * std::sin(cfg.theta);
  const double under = s * s - cfg.n_gap * cfg.n_gap;
  if (under < 0.0) {
    throw NotTotalReflectionError(
        "ftir: theta = " + std::to_string(cfg.theta) +
        " rad is below the critical angle " +
        std::to_string(cfg.critical_angle()) + " rad");
  }
  return cfg.omega() / constants::speed_of_light * std::sqrt(under);
}

double gap_transmittance(const FtirConfig& cfg) {
  return std::exp(-2.0 * ftir_kappa(cfg) * cfg.gap);
}

Stack double_prism_stack(const FtirConfig& cfg) {
  ftir_kappa(cfg);  // validates the total-reflection regime
  Stack s;
  s.entry = Medium::optical(cfg.n_guide);
  s.exit = Medium::optical(cfg.n_guide);
  s.layers = {Layer{Medium::optical(cfg.n_gap), cfg.gap, {}}};
  s.polarization = cfg.polarization;
  // The angle lives entirely in the conserved transverse wavenumber; spectra
  // built from this stack then differentiate at fixed k_par.
  s.frozen_k_par = cfg.n_guide * cfg.omega() / constants::speed_of_light *
                   std::sin(cfg.theta);
  return s;
}

StackAmplitudes double_prism_amplitudes(const FtirConfig& cfg) {
  return stack_amplitudes(double_prism_stack(cfg),
                          AngularFrequency::from_rad_per_s(cfg.omega()));
}

double coupler_ratio(const FtirConfig& cfg) {
  return std::norm(double_prism_amplitudes(cfg).t);
}

double solve_gap_for_ratio(const FtirConfig& cfg, double target) {
  if (!(target > 0.0) || target > 1.0) {
    throw DomainError("ftir: target ratio must be in (0, 1], got " +
                      std::to_string(target));
  }
  if (target == 1.0) return 0.0;  // fused guides

  // coupler_ratio(0) = 1 and the ratio decays monotonically, so bracket by
  // doubling and bisect.
  double lo = 0.0;
  double hi = cfg.lambda0;
  int doublings = 0;
  while (coupler_ratio(cfg.with_gap(hi)) > target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) {
      throw NoSolutionError(
          "ftir: target " + std::to_string(target) +
          " not reached on [0, " + std::to_string(hi) + "] m; ratio there is " +
          std::to_string(coupler_ratio(cfg.with_gap(hi))));
    }
  }
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (coupler_ratio(cfg.with_gap(mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace tunnelsim
