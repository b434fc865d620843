#include "tunnelsim/csv.hpp"

#include <cmath>
#include <cstdio>

#include "tunnelsim/version.hpp"

namespace tunnelsim {

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t fnv1a_hash(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string provenance_line(std::string_view config_hash) {
  std::string line = "# tunnelsim ";
  line += kVersion;
  line += " schema_version=";
  line += std::to_string(kSchemaVersion);
  if (!config_hash.empty()) {
    line += " config=";
    line += config_hash;
  }
  return line;
}

}  // namespace tunnelsim
