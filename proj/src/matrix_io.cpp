#include "jsrec/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "jsrec/error.hpp"

namespace jsrec::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& field) {
  // from_chars is locale-independent, so '.' is always the radix.
  double value = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw precondition_error("malformed number in CSV: '" + field + "'");
  return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

void write_csv(std::ostream& os, const Matrix& M) {
  char buf[32];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Matrix& M) {
  auto os = open_out(path);
  write_csv(os, M);
}

Matrix read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> row;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(parse_double(trim(field)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw precondition_error("ragged CSV: row " + std::to_string(rows.size() + 1) + " has " +
                               std::to_string(row.size()) + " fields, expected " +
                               std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return M;
}

Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_csv(is);
}

void write_key_values(std::ostream& os, const KeyValues& kv) {
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
}

KeyValues read_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw precondition_error("line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

KeyValues instance_metadata(const InstanceSpec& spec, double noise_std) {
  char buf[32];
  KeyValues kv;
  kv["m"] = std::to_string(spec.m);
  kv["n"] = std::to_string(spec.n);
  kv["k"] = std::to_string(spec.k);
  kv["r"] = std::to_string(spec.r);
  kv["ensemble"] = std::string(ensemble_name(spec.ensemble));
  kv["seed"] = std::to_string(spec.seed);
  if (spec.snr_db) {
    std::snprintf(buf, sizeof buf, "%.17g", *spec.snr_db);
    kv["snr_db"] = buf;
  } else {
    kv["snr_db"] = "none";
  }
  kv["calibration"] = spec.calibration == NoiseCalibration::measurement ? "measurement" : "signal";
  std::snprintf(buf, sizeof buf, "%.17g", noise_std);
  kv["noise_std"] = buf;
  return kv;
}

InstanceSpec spec_from_metadata(const KeyValues& kv) {
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw precondition_error("instance metadata missing key '" + key + "'");
    return it->second;
  };
  InstanceSpec spec;
  spec.m = std::stoi(get("m"));
  spec.n = std::stoi(get("n"));
  spec.k = std::stoi(get("k"));
  spec.r = std::stoi(get("r"));
  spec.ensemble = parse_ensemble(get("ensemble"));
  spec.seed = std::stoull(get("seed"));
  const std::string& snr = get("snr_db");
  spec.snr_db = snr == "none" ? std::nullopt : std::optional<double>(parse_double(snr));
  if (auto it = kv.find("calibration"); it != kv.end() && it->second == "signal")
    spec.calibration = NoiseCalibration::signal;
  return spec;
}

void export_instance(const std::filesystem::path& dir, const InstanceSpec& spec, const NoisyInstance& inst) {
  std::filesystem::create_directories(dir);
  write_csv(dir / "A.csv", inst.A.entries);
  write_csv(dir / "X.csv", inst.X.entries);
  write_csv(dir / "Y.csv", inst.Y);
  auto os = open_out(dir / "instance.txt");
  write_key_values(os, instance_metadata(spec, inst.noise_std));
}

}  // namespace jsrec::io
