#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spindiff/analysis.hpp"
#include "spindiff/fields.hpp"

namespace spindiff {

/// FNV-1a 64-bit, used for output checksums and the config hash.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);
std::uint64_t checksum_file(const std::string& path);

/// Screen profile as CSV with the fixed header row
/// y_scr_m,I_up,I_dn,I_py,I_ny (one row per screen sample).
void write_profile(const std::string& path, const FarFieldProfile& profile);

/// 2D scalar block: a 64-byte text header "SPDF2D01 nx ny dx dy tag"
/// (space padded, newline terminated) followed by nx*ny little-endian
/// float64 values, row-major with x as the slow index. Tags are short
/// ASCII identifiers (<= 7 chars).
void write_field_dump(const std::string& path, int nx, int ny, double dx, double dy,
                      const std::string& tag, const std::vector<double>& data);
void write_field_dump(const std::string& path, const RealField& field, const std::string& tag);

struct FieldDump {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  std::string tag;
  std::vector<double> data;
};
FieldDump read_field_dump(const std::string& path);

/// Husimi maps reuse the 2D container: nx/dx describe the y0 axis,
/// ny/dy the ky0 axis. Axis origins are recorded in the run manifest.
void write_husimi(const std::string& path_up, const std::string& path_dn, const HusimiMap& map);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spindiff
