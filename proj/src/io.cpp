#include "spindiff/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace spindiff {

static_assert(std::endian::native == std::endian::little,
              "field dumps are little-endian; big-endian hosts are unsupported");

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& text) { return fnv1a64(text.data(), text.size()); }

std::uint64_t checksum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for checksum: " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

void write_profile(const std::string& path, const FarFieldProfile& profile) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "y_scr_m,I_up,I_dn,I_py,I_ny\n";
  char line[256];
  for (std::size_t i = 0; i < profile.y_scr.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", profile.y_scr[i],
                  profile.i_up[i], profile.i_dn[i], profile.i_py[i], profile.i_ny[i]);
    out << line;
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

constexpr std::size_t kHeaderSize = 64;
constexpr const char* kMagic = "SPDF2D01";

}  // namespace

void write_field_dump(const std::string& path, int nx, int ny, double dx, double dy,
                      const std::string& tag, const std::vector<double>& data) {
  if (tag.empty() || tag.size() > 7) throw IoError("field dump tag must be 1..7 chars: " + tag);
  if (data.size() != static_cast<std::size_t>(nx) * ny)
    throw DimensionError("field dump size mismatch for " + path);

  char header[kHeaderSize];
  std::memset(header, ' ', kHeaderSize);
  const int written = std::snprintf(header, kHeaderSize, "%s %d %d %.8e %.8e %s", kMagic, nx, ny,
                                    dx, dy, tag.c_str());
  if (written < 0 || written >= static_cast<int>(kHeaderSize))
    throw IoError("field dump header overflow for " + path);
  header[written] = ' ';  // undo snprintf's terminator, keep space padding
  header[kHeaderSize - 1] = '\n';

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(header, kHeaderSize);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw IoError("write failed: " + path);
}

void write_field_dump(const std::string& path, const RealField& field, const std::string& tag) {
  write_field_dump(path, field.grid.nx, field.grid.ny, field.grid.dx, field.grid.dy, tag, field.v);
}

FieldDump read_field_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char header[kHeaderSize + 1] = {};
  in.read(header, kHeaderSize);
  if (in.gcount() != static_cast<std::streamsize>(kHeaderSize))
    throw IoError("truncated header in " + path);

  FieldDump d;
  char magic[16] = {}, tag[16] = {};
  if (std::sscanf(header, "%15s %d %d %lf %lf %15s", magic, &d.nx, &d.ny, &d.dx, &d.dy, tag) != 6 ||
      std::string(magic) != kMagic)
    throw IoError("bad field dump header in " + path);
  d.tag = tag;
  d.data.resize(static_cast<std::size_t>(d.nx) * d.ny);
  in.read(reinterpret_cast<char*>(d.data.data()),
          static_cast<std::streamsize>(d.data.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(d.data.size() * sizeof(double)))
    throw IoError("truncated data block in " + path);
  return d;
}

void write_husimi(const std::string& path_up, const std::string& path_dn, const HusimiMap& map) {
  const int ny0 = static_cast<int>(map.y0.size());
  const int nk = static_cast<int>(map.ky0.size());
  const double dy0 = ny0 > 1 ? map.y0[1] - map.y0[0] : 0.0;
  const double dk = nk > 1 ? map.ky0[1] - map.ky0[0] : 0.0;
  write_field_dump(path_up, ny0, nk, dy0, dk, "husim_u", map.q_up);
  write_field_dump(path_dn, ny0, nk, dy0, dk, "husim_d", map.q_dn);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace spindiff
