#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

enum class BarrierFamily {
  DoublePrism,
  PhotonicLattice,
  UndersizedWaveguide,
  ElectronBarrier,
  AcousticLattice,
};

std::string to_string(BarrierFamily family);

struct ScenarioAnalysis {
  bool hartman_scan = false;  // run a length scan in addition to phase time
  bool pulse_check = false;   // cross-check against wave-packet propagation
};

// One Table-1 row family with a documented representative geometry. The
// carrier nu comes from the row's oscillation time; the geometry is an
// invented representative (the table gives none) chosen to put the barrier
// well into the opaque regime at nu.
struct Scenario {
  std::string name;
  BarrierFamily family = BarrierFamily::DoublePrism;
  MediumKind field_kind = MediumKind::Optical;
  double nu_hz = 0.0;
  Stack stack;
  double kappa0 = 0.0;  // barrier decay constant at nu (Bloch estimate for lattices)
  std::function<Stack(double)> length_family;  // stack vs barrier length, if scannable
  ScenarioAnalysis analysis;

  // Display metadata transcribed from the measured-data table; never used in
  // any computation.
  std::string reference;
  std::string tau_paper_display;
  std::string period_paper_display;
  double tau_paper_s = 0.0;     // representative value (midpoint of ranges)
  double period_paper_s = 0.0;  // the row's T column as a number
  std::string provenance;       // row citation + geometry rationale
};

struct ScenarioRecord {
  std::string name;
  std::string family;
  std::string reference;
  double nu_hz = 0.0;
  double period_s = 0.0;   // T = 1/nu
  double tau_sim_s = 0.0;
  double ratio_sim = 0.0;  // tau_sim * nu
  double tau_paper_s = 0.0;
  double ratio_paper = 0.0;  // tau_paper / T_paper
  std::string tau_paper_display;
  std::string period_paper_display;
};

// All presets, one or more per table row family; every geometry is opaque
// (|t|^2 <= e^-6) at its carrier.
std::vector<Scenario> builtin_scenarios();

// Full pipeline for one scenario: verifies the geometry is opaque at nu,
// computes the phase time there and assembles the record. Deterministic.
ScenarioRecord run_scenario(const Scenario& scenario);

// CSV report. Paper columns reproduce the transcription verbatim; empty
// fields become empty cells.
std::string emit_table(std::span<const ScenarioRecord> records);

}  // namespace tunnelsim
