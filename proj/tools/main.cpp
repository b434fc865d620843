#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tunnelsim/config.hpp"
#include "tunnelsim/constants.hpp"
#include "tunnelsim/csv.hpp"
#include "tunnelsim/delay_time.hpp"
#include "tunnelsim/errors.hpp"
#include "tunnelsim/ftir.hpp"
#include "tunnelsim/quantum_barrier.hpp"
#include "tunnelsim/scenarios.hpp"
#include "tunnelsim/version.hpp"
#include "tunnelsim/wave_core.hpp"
#include "tunnelsim/wavepacket.hpp"

namespace {

using namespace tunnelsim;

struct CommonArgs {
  std::string config_path;
  std::string output_path = "-";
  std::vector<std::string> overrides;
};

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cli: cannot open output file '" + path + "'");
  }
  out << content;
}

Config load_config(const CommonArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  for (const std::string& o : args.overrides) cfg.apply_override(o);
  if (cfg.schema_version() != kSchemaVersion) {
    throw ConfigError("config: unsupported schema_version " +
                      std::to_string(cfg.schema_version()));
  }
  return cfg;
}

std::string config_hash(const Config& cfg, const CommonArgs& args) {
  std::string blob = cfg.raw();
  for (const std::string& o : args.overrides) {
    blob += '\n';
    blob += o;
  }
  return hash_hex(fnv1a_hash(blob));
}

std::string delay_summary(const DelayResult& r) {
  std::string out;
  out += "tau_s=" + format_number(r.tau) + "\n";
  out += "omega0_rads=" + format_number(r.omega0) + "\n";
  out += "nu0_hz=" + format_number(r.omega0 / (2.0 * constants::pi)) + "\n";
  out += std::string("method=") +
         (r.method == DelayMethod::PhaseDerivative ? "phase_derivative"
                                                   : "energy_derivative") +
         "\n";
  out += "step_rads=" + format_number(r.step) + "\n";
  out += "error_estimate_s=" + format_number(r.error_estimate) + "\n";
  return out;
}

int run_spectrum(const CommonArgs& args) {
  const Config cfg = load_config(args);
  const Stack stack = stack_from_config(cfg);
  const std::vector<double> grid = grid_from_config(cfg);
  const ComplexSpectrum spec = transmission_spectrum(stack, grid);
  const std::vector<double> phase = unwrap_phase(spec);

  std::string out = provenance_line(config_hash(cfg, args)) + "\n";
  out += "omega_rads,nu_hz,abs_t2,phase_rad,abs_r2,flux_factor\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out += format_number(spec.grid[i]) + "," +
           format_number(spec.grid[i] / (2.0 * constants::pi)) + "," +
           format_number(std::norm(spec.t[i])) + "," +
           format_number(phase[i]) + "," + format_number(std::norm(spec.r[i])) +
           "," + format_number(spec.flux_factor[i]) + "\n";
  }
  write_output(args.output_path, out);
  return 0;
}

int run_delay(const CommonArgs& args, double omega0_flag, double nu0_flag) {
  const Config cfg = load_config(args);
  const Stack stack = stack_from_config(cfg);
  double omega0 = 0.0;
  if (omega0_flag > 0.0) {
    omega0 = omega0_flag;
  } else if (nu0_flag > 0.0) {
    omega0 = 2.0 * constants::pi * nu0_flag;
  } else if (auto w = cfg.get_optional_double("delay", "omega0_rads")) {
    omega0 = *w;
  } else {
    omega0 = 2.0 * constants::pi * cfg.get_double("delay", "nu0_hz");
  }
  const DelayResult r = stack_phase_time(stack, omega0);
  std::string out = provenance_line(config_hash(cfg, args)) + "\n";
  out += delay_summary(r);
  write_output(args.output_path, out);
  return 0;
}

int run_hartman(const CommonArgs& args) {
  const Config cfg = load_config(args);
  const std::string kind = cfg.get_string("hartman", "kind");

  std::function<Stack(double)> family;
  double kappa = 0.0;
  double omega0 = 0.0;

  if (kind == "quantum") {
    const double potential = constants::ev_to_joule(
        cfg.get_double("hartman", "potential_ev"));
    const double energy =
        constants::ev_to_joule(cfg.get_double("hartman", "energy_ev"));
    const double mass =
        cfg.get_double_or("hartman", "mass_kg", constants::electron_mass);
    kappa = quantum_kappa(energy, potential, mass);
    omega0 = energy / constants::hbar;
    family = [potential, mass](double len) {
      return barrier_stack(RectangularBarrier::make(potential, len, mass));
    };
  } else if (kind == "waveguide") {
    const double nu = cfg.get_double("hartman", "nu_hz");
    const double cutoff = cfg.get_double("hartman", "cutoff_hz");
    kappa = waveguide_kappa(AngularFrequency::from_hz(nu),
                            AngularFrequency::from_hz(cutoff));
    omega0 = 2.0 * constants::pi * nu;
    const double k_t =
        2.0 * constants::pi * cutoff / constants::speed_of_light;
    family = [k_t](double len) {
      Stack s;
      s.polarization = Polarization::TE;
      s.layers = {Layer{Medium::optical(1.0), len, k_t}};
      return s;
    };
  } else if (kind == "ftir") {
    const FtirConfig base = FtirConfig::make(
        cfg.get_double("ftir", "n_gap"), cfg.get_double("ftir", "n_guide"),
        cfg.get_double("ftir", "theta_deg") * constants::pi / 180.0, 0.0,
        cfg.get_double("ftir", "lambda0_m"),
        cfg.get_string_or("ftir", "polarization", "TE") == "TM"
            ? Polarization::TM
            : Polarization::TE);
    kappa = ftir_kappa(base);
    omega0 = base.omega();
    family = [base](double gap) { return double_prism_stack(base.with_gap(gap)); };
  } else if (kind == "free_space") {
    omega0 = 2.0 * constants::pi * cfg.get_double("hartman", "nu_hz");
    kappa = 0.0;
    family = [](double len) {
      Stack s;
      s.polarization = Polarization::TE;
      s.layers = {Layer{Medium::optical(1.0), len, {}}};
      return s;
    };
  } else {
    throw ConfigError("config: hartman.kind must be quantum, waveguide, ftir "
                      "or free_space, got '" + kind + "'");
  }

  std::vector<double> lengths;
  if (cfg.find("hartman") && cfg.find("hartman")->get("lengths_m")) {
    lengths = parse_double_list(*cfg.find("hartman")->get("lengths_m"),
                                "hartman.lengths_m");
  } else {
    const std::string spec = cfg.get_string("hartman", "kappa_lengths");
    if (kappa <= 0.0) {
      throw ConfigError(
          "config: kappa_lengths needs an evanescent family; give lengths_m");
    }
    for (double x : parse_double_list(spec, "hartman.kappa_lengths")) {
      lengths.push_back(x / kappa);
    }
  }

  const HartmanScanResult scan = hartman_scan(family, lengths, omega0, kappa);
  std::string out = provenance_line(config_hash(cfg, args)) + "\n";
  out += "# spread=" + format_number(scan.spread) +
         " saturated=" + (scan.saturated ? "yes" : "no") +
         " opaque_count=" + std::to_string(scan.opaque_count) + "\n";
  out += "length_m,kappa_length,tau_s\n";
  for (const auto& p : scan.points) {
    out += format_number(p.length) + "," + format_number(kappa * p.length) +
           "," + format_number(p.tau) + "\n";
  }
  write_output(args.output_path, out);
  return 0;
}

int run_ftir(const CommonArgs& args, double target) {
  const Config cfg = load_config(args);
  const FtirConfig base = FtirConfig::make(
      cfg.get_double("ftir", "n_gap"), cfg.get_double("ftir", "n_guide"),
      cfg.get_double("ftir", "theta_deg") * constants::pi / 180.0,
      cfg.get_double_or("ftir", "gap_m", 0.0),
      cfg.get_double("ftir", "lambda0_m"),
      cfg.get_string_or("ftir", "polarization", "TE") == "TM"
          ? Polarization::TM
          : Polarization::TE);

  std::string out = provenance_line(config_hash(cfg, args)) + "\n";
  if (target > 0.0) {
    const double gap = solve_gap_for_ratio(base, target);
    out += "target_ratio=" + format_number(target) + "\n";
    out += "gap_m=" + format_number(gap) + "\n";
    out += "achieved_ratio=" + format_number(coupler_ratio(base.with_gap(gap))) +
           "\n";
    out += "kappa_per_m=" + format_number(ftir_kappa(base)) + "\n";
    write_output(args.output_path, out);
    return 0;
  }

  const double kappa = ftir_kappa(base);
  const double gap_min = cfg.get_double_or("ftir", "gap_min_m", 0.0);
  const double gap_max =
      cfg.get_double_or("ftir", "gap_max_m", 6.0 / kappa);
  const long points = cfg.get_int_or("ftir", "points", 61);
  if (points < 2 || !(gap_max > gap_min)) {
    throw ConfigError("config: [ftir] scan needs gap_max > gap_min, points >= 2");
  }
  out += "gap_m,kappa_gap,coupler_ratio,decay_law_e_minus_2kg\n";
  for (long i = 0; i < points; ++i) {
    const double g = gap_min + (gap_max - gap_min) * static_cast<double>(i) /
                                   static_cast<double>(points - 1);
    out += format_number(g) + "," + format_number(kappa * g) + "," +
           format_number(coupler_ratio(base.with_gap(g))) + "," +
           format_number(gap_transmittance(base.with_gap(g))) + "\n";
  }
  write_output(args.output_path, out);
  return 0;
}

int run_pulse(const CommonArgs& args, const std::string& trace_prefix) {
  const Config cfg = load_config(args);
  const Stack stack = stack_from_config(cfg);
  const double nu0 = cfg.get_double("pulse", "nu0_hz");
  const double sigma_t = cfg.get_double("pulse", "sigma_t_s");
  const double dt = cfg.get_double("pulse", "dt_s");
  const long n = cfg.get_int_or("pulse", "samples", 4096);
  if (n < 8) throw ConfigError("config: pulse.samples must be >= 8");

  const Pulse input =
      synthesize_gaussian(nu0, sigma_t, dt, static_cast<std::size_t>(n));

  // Cover the occupied band with margin, at least 8 samples per bandwidth.
  const double half = 1.5 * input.bandwidth_hz;
  const long points =
      std::max<long>(257, cfg.get_int_or("pulse", "grid_points", 257));
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        2.0 * constants::pi *
        (nu0 - half + 2.0 * half * static_cast<double>(i) /
                          static_cast<double>(points - 1));
  }
  const ComplexSpectrum spec = transmission_spectrum(stack, grid);
  const Pulse output = propagate(input, spec);
  const double ref_len = cfg.get_double_or("pulse", "reference_length_m",
                                           stack.total_thickness());
  const DelayMeasurement m = measure_delay(input, output, ref_len);

  std::string out = provenance_line(config_hash(cfg, args)) + "\n";
  out += "# peak_delay_s=" + format_number(m.peak_delay) +
         " centroid_delay_s=" + format_number(m.centroid_delay) +
         " correlation=" + format_number(m.correlation) +
         " effective_speed_mps=" + format_number(m.effective_speed) +
         " speed_over_c=" +
         format_number(m.effective_speed / constants::speed_of_light) + "\n";
  if (!trace_prefix.empty()) {
    write_output(trace_prefix + "_input.csv",
                 provenance_line(config_hash(cfg, args)) + "\n" +
                     trace_csv(input));
    write_output(trace_prefix + "_output.csv",
                 provenance_line(config_hash(cfg, args)) + "\n" +
                     trace_csv(output));
  }
  out += "t_s,input_env2,output_env2\n";
  for (std::size_t i = 0; i < input.size(); ++i) {
    out += format_number(input.time_at(i)) + "," +
           format_number(std::norm(input.envelope[i])) + "," +
           format_number(std::norm(output.envelope[i])) + "\n";
  }
  write_output(args.output_path, out);
  return 0;
}

int run_table(const CommonArgs& args) {
  std::vector<ScenarioRecord> records;
  for (const Scenario& s : builtin_scenarios()) {
    records.push_back(run_scenario(s));
  }
  std::string out =
      provenance_line(hash_hex(fnv1a_hash("builtin_scenarios"))) + "\n";
  out += emit_table(records);
  write_output(args.output_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier-tunneling transmission and delay-time toolkit"};
  app.set_version_flag("--version", std::string("tunnelsim ") + kVersion);
  app.require_subcommand(1);

  CommonArgs args;
  double omega0_flag = 0.0;
  double nu0_flag = 0.0;
  double ftir_target = 0.0;
  std::string trace_prefix;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("-c,--config", args.config_path,
                                "configuration file");
    if (config_required) opt->required();
    sub->add_option("-o,--output", args.output_path,
                    "output file ('-' for stdout)");
    sub->add_option("--set", args.overrides,
                    "override a config value (section.key=value)");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "transmission spectrum of a stack over a grid");
  add_common(spectrum, true);

  CLI::App* delay =
      app.add_subcommand("delay", "phase (Wigner) delay time of a stack");
  add_common(delay, true);
  delay->add_option("--omega0", omega0_flag, "evaluation frequency, rad/s");
  delay->add_option("--nu0", nu0_flag, "evaluation frequency, Hz");

  CLI::App* hartman = app.add_subcommand(
      "hartman", "phase time vs barrier length (saturation scan)");
  add_common(hartman, true);

  CLI::App* ftir = app.add_subcommand(
      "ftir", "frustrated-total-internal-reflection gap scan or design");
  add_common(ftir, true);
  ftir->add_option("--target", ftir_target,
                   "solve for the gap that gives this coupling ratio");

  CLI::App* pulse = app.add_subcommand(
      "pulse", "propagate a Gaussian wave packet through a stack");
  add_common(pulse, true);
  pulse->add_option("--trace-prefix", trace_prefix,
                    "also write <prefix>_input.csv / <prefix>_output.csv");

  CLI::App* table = app.add_subcommand(
      "table", "run the built-in barrier catalog and emit the report");
  add_common(table, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(args);
    if (delay->parsed()) return run_delay(args, omega0_flag, nu0_flag);
    if (hartman->parsed()) return run_hartman(args);
    if (ftir->parsed()) return run_ftir(args, ftir_target);
    if (pulse->parsed()) return run_pulse(args, trace_prefix);
    if (table->parsed()) return run_table(args);
  } catch (const Error& e) {
    std::cerr << "tunnelsim: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tunnelsim: internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
