#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "jsrec/mmv.hpp"
#include "jsrec/types.hpp"

// Plain-text exchange formats: row-major CSV for matrices ('.' radix, no
// header) and flat key=value blocks for instance metadata.
namespace jsrec::io {

/// Writes one row per line, values separated by ',', using %.17g so that a
/// round trip is exact.
void write_csv(std::ostream& os, const Matrix& M);
void write_csv(const std::filesystem::path& path, const Matrix& M);

/// Parses a rectangular CSV matrix. Blank lines and lines starting with '#'
/// are skipped. Throws precondition_error on ragged rows or bad numbers.
Matrix read_csv(std::istream& is);
Matrix read_csv(const std::filesystem::path& path);

using KeyValues = std::map<std::string, std::string>;

void write_key_values(std::ostream& os, const KeyValues& kv);
/// Lines of the form key=value; '#' starts a comment line; whitespace
/// around keys and values is trimmed.
KeyValues read_key_values(std::istream& is);

KeyValues instance_metadata(const InstanceSpec& spec, double noise_std);
InstanceSpec spec_from_metadata(const KeyValues& kv);

/// Writes A.csv, X.csv, Y.csv and instance.txt into `dir`.
void export_instance(const std::filesystem::path& dir, const InstanceSpec& spec, const NoisyInstance& inst);

}  // namespace jsrec::io
