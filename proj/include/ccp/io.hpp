#pragma once

#include <string>
#include <string_view>

#include "ccp/instance.hpp"

namespace ccp {

// Instance documents look like
//   {"dim": 2, "b": ["1", "1"], "colors": [[["1", "0"], ["0", "1"]], [["2", "1"], ["1", "2"]]]}
// Coordinates are rational strings; plain JSON integers are accepted too.
// Errors are ErrorKind::parse and carry "line N" plus the offending field.
// expected_colors = 0 accepts any number of colors.
CcpInstance parse_instance(std::string_view text, std::size_t expected_colors = 0);
// Canonical layout: one color per line. parse ∘ serialize is the identity on this layout.
std::string serialize_instance(const CcpInstance& inst);

// One point per line, coordinates separated by whitespace or commas. Blank lines and
// lines starting with '#' are skipped.
PointSet parse_points(std::string_view text);
std::string serialize_points(const PointSet& P);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// FNV-1a over the canonical serialization, 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string instance_digest(const CcpInstance& inst);
std::string points_digest(const PointSet& P);

}  // namespace ccp
