#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sewi/error.hpp"
#include "sewi/field.hpp"

namespace sewi {

// Binary field snapshot, all integers and reals little-endian:
//
//   char[4]  magic "SEWI"
//   u32      version (1)
//   u32      dims (1 or 2)
//   per dim: f64 a, f64 b, u64 N
//   prod(N) x (f64 re, f64 im) coefficients
//
// Coefficients follow the in-memory order: natural FFT order per axis
// (slot k holds mode l = k for k < N/2 and l = k - N otherwise), row-major
// with the first axis slowest.
inline constexpr std::uint32_t kSnapshotVersion = 1;

namespace detail {

template <class T>
void put_le(std::string& out, T v) {
  auto u = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
  if constexpr (std::endian::native == std::endian::big) std::reverse(u.begin(), u.end());
  out.append(reinterpret_cast<const char*>(u.data()), u.size());
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw IoError("snapshot: truncated data");
  std::array<unsigned char, sizeof(T)> u{};
  std::memcpy(u.data(), in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(u.begin(), u.end());
  pos += sizeof(T);
  return std::bit_cast<T>(u);
}

}  // namespace detail

inline std::string encode_snapshot(const SpectralField& field) {
  std::string out = "SEWI";
  const Grid& g = field.grid();
  detail::put_le<std::uint32_t>(out, kSnapshotVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dims()));
  for (int d = 0; d < g.dims(); ++d) {
    detail::put_le<double>(out, g.axis(d).a);
    detail::put_le<double>(out, g.axis(d).b);
    detail::put_le<std::uint64_t>(out, g.axis(d).n);
  }
  for (cplx c : field.coeffs()) {
    detail::put_le<double>(out, c.real());
    detail::put_le<double>(out, c.imag());
  }
  return out;
}

inline SpectralField decode_snapshot(const std::string& bytes) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "SEWI") != 0) throw IoError("snapshot: bad magic");
  std::size_t pos = 4;
  if (detail::get_le<std::uint32_t>(bytes, pos) != kSnapshotVersion) throw IoError("snapshot: unsupported version");
  auto dims = detail::get_le<std::uint32_t>(bytes, pos);
  if (dims != 1 && dims != 2) throw IoError("snapshot: bad dimension count");
  std::array<Axis, 2> axes{};
  for (std::uint32_t d = 0; d < dims; ++d) {
    axes[d].a = detail::get_le<double>(bytes, pos);
    axes[d].b = detail::get_le<double>(bytes, pos);
    axes[d].n = detail::get_le<std::uint64_t>(bytes, pos);
  }
  Grid g = [&] {
    try {
      return dims == 1 ? Grid(axes[0]) : Grid(axes[0], axes[1]);
    } catch (const ConfigError& e) {
      throw IoError(std::string("snapshot: ") + e.what());
    }
  }();
  if (bytes.size() - pos != g.size() * 16) throw IoError("snapshot: coefficient block has wrong length");
  std::vector<cplx> c(g.size());
  for (auto& v : c) {
    double re = detail::get_le<double>(bytes, pos);
    double im = detail::get_le<double>(bytes, pos);
    v = {re, im};
  }
  return SpectralField(g, std::move(c));
}

inline void write_snapshot(const std::filesystem::path& path, const SpectralField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  std::string bytes = encode_snapshot(field);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed: " + path.string());
}

inline SpectralField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

/// Full-precision scientific notation used by every CSV writer.
inline std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

/// Lossy plotting export: x [, y], Re u, Im u, |u|^2 at the sample nodes.
inline void write_density_csv(const std::filesystem::path& path, const SpectralField& field) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  const Grid& g = field.grid();
  auto values = synthesize(field);
  os << (g.dims() == 1 ? "x,re,im,density\n" : "x,y,re,im,density\n");
  for (std::size_t i = 0; i < values.size(); ++i) {
    Point p = g.node(i);
    os << fmt_real(p[0]) << ',';
    if (g.dims() == 2) os << fmt_real(p[1]) << ',';
    os << fmt_real(values[i].real()) << ',' << fmt_real(values[i].imag()) << ',' << fmt_real(std::norm(values[i]))
       << '\n';
  }
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace sewi
