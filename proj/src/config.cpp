#include "tunnelsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tunnelsim/constants.hpp"
#include "tunnelsim/errors.hpp"

namespace tunnelsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + what + " is not a number: '" + text + "'");
  }
}

Polarization parse_polarization(const std::string& text) {
  if (text == "TE" || text == "te") return Polarization::TE;
  if (text == "TM" || text == "tm") return Polarization::TM;
  if (text == "scalar" || text == "Scalar") return Polarization::Scalar;
  throw ConfigError("config: unknown polarization '" + text +
                    "' (TE, TM or scalar)");
}

MediumKind parse_kind(const std::string& text) {
  if (text == "optical") return MediumKind::Optical;
  if (text == "quantum") return MediumKind::Quantum;
  if (text == "acoustic") return MediumKind::Acoustic;
  throw ConfigError("config: unknown stack kind '" + text +
                    "' (optical, quantum or acoustic)");
}

// Reads one medium from a section, keys optionally prefixed (entry_, exit_).
Medium medium_from_section(const Config& cfg, const std::string& section,
                           MediumKind kind, const std::string& prefix) {
  switch (kind) {
    case MediumKind::Optical:
      return Medium::optical(cfg.get_double(section, prefix + "n"));
    case MediumKind::Quantum: {
      const double mass = cfg.get_double_or(section, prefix + "mass_kg",
                                            constants::electron_mass);
      if (auto ev = cfg.get_optional_double(section, prefix + "potential_ev")) {
        return Medium::quantum_ev(*ev, mass);
      }
      return Medium::quantum(
          cfg.get_double_or(section, prefix + "potential_j", 0.0), mass);
    }
    case MediumKind::Acoustic:
      return Medium::acoustic(
          cfg.get_double(section, prefix + "speed_mps"),
          cfg.get_double(section, prefix + "density_kgpm3"));
  }
  throw ConfigError("config: bad medium kind");
}

}  // namespace

std::optional<std::string> ConfigSection::get(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Config Config::parse_string(const std::string& text,
                            const std::string& origin) {
  Config cfg;
  cfg.raw_ = text;
  cfg.origin_ = origin;
  cfg.sections_.push_back({"", {}});

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                          ": malformed section header '" + t + "'");
      }
      cfg.sections_.push_back({trim(t.substr(1, t.size() - 2)), {}});
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                        ": empty key");
    }
    cfg.sections_.back().entries.emplace_back(key, value);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

int Config::schema_version() const {
  return static_cast<int>(get_int_or("", "schema_version", 1));
}

bool Config::has_section(const std::string& name) const {
  return find(name) != nullptr;
}

const ConfigSection* Config::find(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const ConfigSection*> Config::all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections_) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
  const ConfigSection* s = find(section);
  if (s) {
    if (auto v = s->get(key)) return *v;
  }
  throw ConfigError("config: missing required key '" +
                    (section.empty() ? key : section + "." + key) + "' in " +
                    origin_);
}

std::string Config::get_string_or(const std::string& section,
                                  const std::string& key,
                                  const std::string& fallback) const {
  const ConfigSection* s = find(section);
  if (s) {
    if (auto v = s->get(key)) return *v;
  }
  return fallback;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  return parse_double(get_string(section, key), section + "." + key);
}

double Config::get_double_or(const std::string& section,
                             const std::string& key, double fallback) const {
  const ConfigSection* s = find(section);
  if (s) {
    if (auto v = s->get(key)) return parse_double(*v, section + "." + key);
  }
  return fallback;
}

long Config::get_int_or(const std::string& section, const std::string& key,
                        long fallback) const {
  const ConfigSection* s = find(section);
  if (s) {
    if (auto v = s->get(key)) {
      const double d = parse_double(*v, section + "." + key);
      const long n = static_cast<long>(d);
      if (static_cast<double>(n) != d) {
        throw ConfigError("config: " + section + "." + key +
                          " must be an integer, got '" + *v + "'");
      }
      return n;
    }
  }
  return fallback;
}

std::optional<double> Config::get_optional_double(const std::string& section,
                                                  const std::string& key) const {
  const ConfigSection* s = find(section);
  if (s) {
    if (auto v = s->get(key)) return parse_double(*v, section + "." + key);
  }
  return std::nullopt;
}

void Config::apply_override(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("config: override must look like section.key=value, "
                      "got '" + spec + "'");
  }
  const std::string path = trim(spec.substr(0, eq));
  const std::string value = trim(spec.substr(eq + 1));
  const std::size_t dot = path.find('.');
  const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
  const std::string key =
      dot == std::string::npos ? path : path.substr(dot + 1);
  if (key.empty()) {
    throw ConfigError("config: override has an empty key: '" + spec + "'");
  }
  for (auto& s : sections_) {
    if (s.name != section) continue;
    for (auto& [k, v] : s.entries) {
      if (k == key) {
        v = value;
        return;
      }
    }
    s.entries.emplace_back(key, value);
    return;
  }
  sections_.push_back({section, {{key, value}}});
}

Stack stack_from_config(const Config& cfg) {
  if (!cfg.has_section("stack")) {
    throw ConfigError("config: missing [stack] section");
  }
  const MediumKind kind = parse_kind(cfg.get_string("stack", "kind"));

  Stack stack;
  stack.entry = medium_from_section(cfg, "stack", kind, "entry_");
  stack.exit = medium_from_section(cfg, "stack", kind, "exit_");
  stack.polarization = parse_polarization(cfg.get_string_or(
      "stack", "polarization",
      kind == MediumKind::Optical ? "TE" : "scalar"));

  if (auto deg = cfg.get_optional_double("stack", "theta_deg")) {
    stack.theta = *deg * constants::pi / 180.0;
  } else {
    stack.theta = cfg.get_double_or("stack", "theta_rad", 0.0);
  }
  if (auto fk = cfg.get_optional_double("stack", "frozen_k_par")) {
    stack.frozen_k_par = *fk;
  }

  for (const ConfigSection* sec : cfg.all("layer")) {
    Layer layer;
    switch (kind) {
      case MediumKind::Optical:
        layer.medium = Medium::optical(parse_double(
            sec->get("n").value_or(""), "layer.n"));
        break;
      case MediumKind::Quantum: {
        const double mass = sec->get("mass_kg")
                                ? parse_double(*sec->get("mass_kg"),
                                               "layer.mass_kg")
                                : constants::electron_mass;
        if (auto ev = sec->get("potential_ev")) {
          layer.medium =
              Medium::quantum_ev(parse_double(*ev, "layer.potential_ev"), mass);
        } else {
          layer.medium = Medium::quantum(
              sec->get("potential_j")
                  ? parse_double(*sec->get("potential_j"), "layer.potential_j")
                  : 0.0,
              mass);
        }
        break;
      }
      case MediumKind::Acoustic:
        layer.medium = Medium::acoustic(
            parse_double(sec->get("speed_mps").value_or(""), "layer.speed_mps"),
            parse_double(sec->get("density_kgpm3").value_or(""),
                         "layer.density_kgpm3"));
        break;
    }
    layer.thickness =
        parse_double(sec->get("thickness_m").value_or(""), "layer.thickness_m");
    if (auto tk = sec->get("transverse_k")) {
      layer.transverse_k = parse_double(*tk, "layer.transverse_k");
    }
    stack.layers.push_back(std::move(layer));
  }

  validate(stack);
  return stack;
}

std::vector<double> grid_from_config(const Config& cfg) {
  if (!cfg.has_section("grid")) {
    throw ConfigError("config: missing [grid] section");
  }
  double omega_min = 0.0, omega_max = 0.0;
  if (auto nu_min = cfg.get_optional_double("grid", "nu_min_hz")) {
    omega_min = 2.0 * constants::pi * (*nu_min);
    omega_max = 2.0 * constants::pi * cfg.get_double("grid", "nu_max_hz");
  } else {
    omega_min = cfg.get_double("grid", "omega_min_rads");
    omega_max = cfg.get_double("grid", "omega_max_rads");
  }
  const long points = cfg.get_int_or("grid", "points", 257);
  if (points < 2 || !(omega_max > omega_min) || !(omega_min > 0.0)) {
    throw ConfigError("config: [grid] needs 0 < min < max and points >= 2");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        omega_min + (omega_max - omega_min) * static_cast<double>(i) /
                        static_cast<double>(points - 1);
  }
  return grid;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(parse_double(t, what));
  }
  if (out.empty()) {
    throw ConfigError("config: " + what + " is an empty list");
  }
  return out;
}

}  // namespace tunnelsim
