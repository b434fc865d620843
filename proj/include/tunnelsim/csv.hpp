#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tunnelsim {

// Fixed numeric formatting for all CSV output: identical input bits give
// identical bytes.
std::string format_number(double v);

std::uint64_t fnv1a_hash(std::string_view data);
std::string hash_hex(std::uint64_t h);

// "# tunnelsim <version> schema_version=<n> config=<hash>"
std::string provenance_line(std::string_view config_hash);

}  // namespace tunnelsim
