#include "tomokit/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace tomokit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw Error("cannot format value");
  return {buf, res.ptr};
}

namespace {

void write_payload(const fs::path& path, std::span<const double> values, std::size_t cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << format_double(values[k]) << ((k + 1) % cols == 0 ? '\n' : ',');
  }
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<double> read_payload(const fs::path& path, std::size_t rows, std::size_t cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read grid data " + path.string());
  std::vector<double> values;
  values.reserve(rows * cols);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        throw Error(path.string() + ": malformed number on line " + std::to_string(row + 1));
      }
      values.push_back(v);
      ++count;
      p = res.ptr;
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      if (*p != ',') throw Error(path.string() + ": unexpected character on line " + std::to_string(row + 1));
      ++p;
    }
    if (count != cols) {
      throw Error(path.string() + ": line " + std::to_string(row + 1) + " has " +
                  std::to_string(count) + " values, expected " + std::to_string(cols));
    }
    ++row;
  }
  if (row != rows) {
    throw Error(path.string() + ": found " + std::to_string(row) + " rows, expected " +
                std::to_string(rows));
  }
  return values;
}

json read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw Error("cannot read grid manifest " + manifest.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(manifest.string() + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const fs::path& manifest) {
  if (!j.contains(key)) throw Error(manifest.string() + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(manifest.string() + ": field '" + key + "' has the wrong type");
  }
}

fs::path data_path(const json& j, const fs::path& manifest) {
  const fs::path data = field<std::string>(j, "data", manifest);
  return data.is_absolute() ? data : manifest.parent_path() / data;
}

void write_manifest(const json& j, const fs::path& manifest) {
  std::ofstream out(manifest, std::ios::binary);
  if (!out) throw Error("cannot write " + manifest.string());
  out << j.dump(2) << '\n';
}

fs::path sibling_csv(const fs::path& manifest) {
  fs::path csv = manifest;
  csv.replace_extension(".csv");
  if (csv == manifest) csv += ".data.csv";
  return csv;
}

}  // namespace

void write_grid(const OpticalTomogramGrid& grid, const fs::path& manifest) {
  const GridSpec& s = grid.spec();
  const fs::path csv = sibling_csv(manifest);
  json j;
  j["kind"] = "optical";
  j["x_min"] = s.x_min;
  j["x_max"] = s.x_max;
  j["n_x"] = s.n_x;
  j["n_theta"] = s.n_theta;
  j["data"] = csv.filename().string();
  write_payload(csv, grid.values(), s.n_x);
  write_manifest(j, manifest);
}

void write_grid(const WignerGrid& grid, const fs::path& manifest) {
  const GridSpec& s = grid.spec();
  const fs::path csv = sibling_csv(manifest);
  json j;
  j["kind"] = "wigner";
  j["q_min"] = s.q_min;
  j["q_max"] = s.q_max;
  j["n_q"] = s.n_q;
  j["p_min"] = s.p_min;
  j["p_max"] = s.p_max;
  j["n_p"] = s.n_p;
  j["data"] = csv.filename().string();
  write_payload(csv, grid.values(), s.n_p);
  write_manifest(j, manifest);
}

GridKind read_grid_kind(const fs::path& manifest) {
  const json j = read_manifest(manifest);
  const auto kind = field<std::string>(j, "kind", manifest);
  if (kind == "optical") return GridKind::optical;
  if (kind == "wigner") return GridKind::wigner;
  throw Error(manifest.string() + ": unknown grid kind '" + kind + "'");
}

OpticalTomogramGrid read_optical_grid(const fs::path& manifest) {
  const json j = read_manifest(manifest);
  if (field<std::string>(j, "kind", manifest) != "optical") {
    throw Error(manifest.string() + ": not an optical grid");
  }
  GridSpec s;
  s.x_min = field<double>(j, "x_min", manifest);
  s.x_max = field<double>(j, "x_max", manifest);
  s.n_x = field<std::size_t>(j, "n_x", manifest);
  s.n_theta = field<std::size_t>(j, "n_theta", manifest);
  s.validate_tomogram();
  return {s, read_payload(data_path(j, manifest), s.n_theta, s.n_x)};
}

WignerGrid read_wigner_grid(const fs::path& manifest) {
  const json j = read_manifest(manifest);
  if (field<std::string>(j, "kind", manifest) != "wigner") {
    throw Error(manifest.string() + ": not a wigner grid");
  }
  GridSpec s;
  // square grids may give one x range for both axes
  const bool shared = !j.contains("q_min") && j.contains("x_min");
  s.q_min = field<double>(j, shared ? "x_min" : "q_min", manifest);
  s.q_max = field<double>(j, shared ? "x_max" : "q_max", manifest);
  s.p_min = field<double>(j, shared ? "x_min" : "p_min", manifest);
  s.p_max = field<double>(j, shared ? "x_max" : "p_max", manifest);
  s.n_q = field<std::size_t>(j, "n_q", manifest);
  s.n_p = field<std::size_t>(j, "n_p", manifest);
  s.validate_phase();
  return {s, read_payload(data_path(j, manifest), s.n_q, s.n_p)};
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace tomokit
