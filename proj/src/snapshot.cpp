#include "sqg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sqg/errors.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

namespace {

void put_double(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char bytes[8];
  std::memcpy(bytes, &bits, sizeof bits);
  out.write(bytes, 8);
}

double get_double(std::istream& in) {
  char bytes[8];
  if (!in.read(bytes, 8)) throw ConfigError("snapshot payload is truncated");
  std::uint64_t bits;
  std::memcpy(&bits, bytes, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::ofstream open_with_header(const std::string& path, const Grid& grid, const char* kind,
                               double time, const Metadata& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write snapshot " + path);
  out << "n=" << grid.n() << '\n'
      << "box_length=" << format_double(grid.box_length()) << '\n'
      << "kind=" << kind << '\n'
      << "time=" << format_double(time) << '\n';
  for (const auto& [key, value] : metadata) {
    if (key == "n" || key == "box_length" || key == "kind" || key == "time") continue;
    out << key << '=' << value << '\n';
  }
  out << '\n';
  return out;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, double time,
                    const Metadata& metadata) {
  auto out = open_with_header(path, f.grid(), "spectral", time, metadata);
  for (const Complex& c : f.coeffs()) {
    put_double(out, c.real());
    put_double(out, c.imag());
  }
  if (!out) throw ConfigError("failed while writing snapshot " + path);
}

void write_snapshot(const std::string& path, const RealField& f, double time,
                    const Metadata& metadata) {
  auto out = open_with_header(path, f.grid(), "real", time, metadata);
  for (double v : f.values()) put_double(out, v);
  if (!out) throw ConfigError("failed while writing snapshot " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot " + path);
  Metadata header;
  std::string line;
  while (std::getline(in, line) && !line.empty()) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed snapshot header line: " + line);
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"n", "box_length", "kind", "time"})
    if (!header.count(key)) throw ConfigError(std::string("snapshot header lacks ") + key);

  int n = 0;
  double box_length = 0.0, time = 0.0;
  try {
    n = std::stoi(header["n"]);
    box_length = std::stod(header["box_length"]);
    time = std::stod(header["time"]);
  } catch (const std::exception&) {
    throw ConfigError("snapshot header has a non-numeric n, box_length or time");
  }
  const Grid grid(n, box_length);
  const std::string kind = header["kind"];
  Metadata extra = header;
  for (const char* key : {"n", "box_length", "kind", "time"}) extra.erase(key);

  if (kind == "spectral") {
    std::vector<Complex> coeffs(grid.size());
    for (Complex& c : coeffs) {
      const double re = get_double(in);
      c = {re, get_double(in)};
    }
    return {SpectralField(grid, std::move(coeffs)), time, kind, std::move(extra)};
  }
  if (kind == "real") {
    std::vector<double> values(grid.size());
    for (double& v : values) v = get_double(in);
    return {forward_transform(RealField(grid, std::move(values))), time, kind, std::move(extra)};
  }
  throw ConfigError("snapshot kind must be real or spectral, got " + kind);
}

}  // namespace sqg
