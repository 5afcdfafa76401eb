#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tomokit {

using DetailValue = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;
using Details = std::vector<std::pair<std::string, DetailValue>>;

/// Outcome of one check: pass <=> metric is within threshold in the stated
/// direction. Non-finite metrics never pass.
struct CheckReport {
  enum class Direction { at_most, at_least };

  std::string group;  // structural, hirschman, klm, bochner, overlap, fixedpoint, conservation
  std::string check;  // e.g. "structural.parity"
  double metric = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::at_most;
  bool pass = false;
  std::vector<std::uint64_t> seeds;
  std::string grid;
  Details details;

  static CheckReport make(std::string group, std::string check, double metric, double threshold,
                          Direction direction);
  CheckReport& add(std::string key, DetailValue value);
};

bool within(double metric, double threshold, CheckReport::Direction direction);

/// Serializes a run as JSON with a fixed key order so identical inputs give
/// byte-identical output. `header` entries precede the check list.
std::string reports_to_json(const Details& header, const std::vector<CheckReport>& reports);

/// Concatenates the check lists of report files written by reports_to_json.
/// "verdict" is the conjunction of each file's verdict, or of its checks
/// when the file has none.
std::string merge_report_files(const std::vector<std::filesystem::path>& files);

/// Writes text to a file, throwing Error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tomokit
