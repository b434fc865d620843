#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tunnelsim/transfer_matrix.hpp"

namespace tunnelsim {

// Key/value configuration with named, repeatable sections:
//
//   schema_version = 1
//   [stack]
//   kind = optical
//   [layer]
//   n = 2.25
//   thickness_m = 77.9e-9
//
// '#' or ';' at the start of a line begins a comment. Keys before the first
// section header belong to the unnamed section "". Repeated sections keep
// their file order ([layer] blocks form the layer sequence).
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(const std::string& key) const;
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  const std::string& raw() const { return raw_; }
  int schema_version() const;

  bool has_section(const std::string& name) const;
  const ConfigSection* find(const std::string& name) const;
  std::vector<const ConfigSection*> all(const std::string& name) const;

  // Required / defaulted typed access; errors name "section.key".
  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_int_or(const std::string& section, const std::string& key,
                  long fallback) const;
  std::optional<double> get_optional_double(const std::string& section,
                                            const std::string& key) const;

  // "section.key=value" override (first matching section; created if absent).
  void apply_override(const std::string& spec);

 private:
  std::vector<ConfigSection> sections_;
  std::string raw_;
  std::string origin_;
};

// [stack] + repeated [layer] sections -> Stack.
Stack stack_from_config(const Config& cfg);

// [grid]: nu_min_hz/nu_max_hz (or omega_min_rads/omega_max_rads) + points.
std::vector<double> grid_from_config(const Config& cfg);

// Comma-separated list of doubles.
std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what);

}  // namespace tunnelsim
