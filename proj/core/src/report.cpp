#include "tomokit/report.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "tomokit/grid.hpp"

namespace tomokit {

using json = nlohmann::ordered_json;

bool within(double metric, double threshold, CheckReport::Direction direction) {
  if (!std::isfinite(metric)) return false;
  return direction == CheckReport::Direction::at_most ? metric <= threshold : metric >= threshold;
}

CheckReport CheckReport::make(std::string group, std::string check, double metric, double threshold,
                              Direction direction) {
  CheckReport r;
  r.group = std::move(group);
  r.check = std::move(check);
  r.metric = metric;
  r.threshold = threshold;
  r.direction = direction;
  r.pass = within(metric, threshold, direction);
  return r;
}

CheckReport& CheckReport::add(std::string key, DetailValue value) {
  details.emplace_back(std::move(key), std::move(value));
  return *this;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json detail_json(const DetailValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return number(x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          json arr = json::array();
          for (double d : x) arr.push_back(number(d));
          return arr;
        } else {
          return x;
        }
      },
      v);
}

json details_json(const Details& d) {
  json obj = json::object();
  for (const auto& [k, v] : d) obj[k] = detail_json(v);
  return obj;
}

json report_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["group"] = r.group;
  j["metric"] = number(r.metric);
  j["threshold"] = number(r.threshold);
  j["direction"] = r.direction == CheckReport::Direction::at_most ? "at_most" : "at_least";
  j["pass"] = r.pass;
  j["seeds"] = r.seeds;
  j["grid"] = r.grid;
  j["details"] = details_json(r.details);
  return j;
}

}  // namespace

std::string reports_to_json(const Details& header, const std::vector<CheckReport>& reports) {
  json root = details_json(header);
  bool all = true;
  json checks = json::array();
  for (const CheckReport& r : reports) {
    checks.push_back(report_json(r));
    all = all && r.pass;
  }
  root["all_pass"] = all;
  root["checks"] = std::move(checks);
  return root.dump(2) + "\n";
}

std::string merge_report_files(const std::vector<std::filesystem::path>& files) {
  if (files.empty()) throw Error("nothing to merge");
  json merged;
  json sources = json::array();
  json checks = json::array();
  bool all = true;
  bool verdict = true;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw Error("cannot read report " + f.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(f.string() + ": " + e.what());
    }
    if (!j.contains("checks") || !j["checks"].is_array()) {
      throw Error(f.string() + ": not a tomokit report (no check list)");
    }
    json src;
    src["file"] = f.filename().string();
    for (const char* key : {"command", "state"}) {
      if (j.contains(key)) src[key] = j[key];
    }
    sources.push_back(std::move(src));
    bool file_all = true;
    for (auto& c : j["checks"]) {
      file_all = file_all && c.value("pass", false);
      checks.push_back(c);
    }
    all = all && file_all;
    // a file's own verdict wins over its raw check list (validate reports
    // accept either the quantum or the classical branch)
    verdict = verdict && (j.contains("verdict") ? j["verdict"].get<bool>() : file_all);
  }
  merged["command"] = "report";
  merged["merged_from"] = std::move(sources);
  merged["all_pass"] = all;
  merged["verdict"] = verdict;
  merged["checks"] = std::move(checks);
  return merged.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace tomokit
