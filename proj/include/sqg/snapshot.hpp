#pragma once

#include <map>
#include <string>

#include "sqg/field.hpp"

namespace sqg {

using Metadata = std::map<std::string, std::string>;

/// A field read back from a snapshot file. Real snapshots are transformed so
/// `field` always holds coefficients; `kind` records what was on disk.
struct Snapshot {
  SpectralField field;
  double time = 0.0;
  std::string kind;
  Metadata metadata;
};

/// Text header of key=value lines (n, box_length, kind, time, then any extra
/// metadata), an empty line, then little-endian row-major doubles. Spectral
/// data is stored as interleaved re/im pairs.
void write_snapshot(const std::string& path, const SpectralField& f, double time,
                    const Metadata& metadata = {});
void write_snapshot(const std::string& path, const RealField& f, double time,
                    const Metadata& metadata = {});

/// Throws ConfigError on a missing or malformed file.
Snapshot read_snapshot(const std::string& path);

}  // namespace sqg
