// Run reports: named scalars with optional golden targets, named tables,
// verdicts, and deterministic JSON/CSV serialization.
#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "rmuq/constructions.hpp"
#include "rmuq/errors.hpp"

namespace rmuq {

struct ReportScalar {
  std::string name;
  double value = 0.0;
  bool has_target = false;
  double target = 0.0;
  double tolerance = 0.0;
  std::string provenance;  // free-form note on where the target comes from
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  std::string example;
  std::uint64_t seed = 0;
  std::string config_echo;
  std::vector<ReportScalar> scalars;
  std::vector<ReportTable> tables;
  std::vector<CheckResult> verdicts;

  void scalar(std::string name, double value) {
    ReportScalar s;
    s.name = std::move(name);
    s.value = value;
    scalars.push_back(std::move(s));
  }
  void golden(std::string name, double value, double target, double tol, std::string prov) {
    ReportScalar s;
    s.name = std::move(name);
    s.value = value;
    s.has_target = true;
    s.target = target;
    s.tolerance = tol;
    s.provenance = std::move(prov);
    scalars.push_back(std::move(s));
    CheckResult v;
    v.name = scalars.back().name;
    v.value = value;
    v.target = target;
    v.tolerance = tol;
    v.pass = std::fabs(value - target) <= tol;
    verdicts.push_back(std::move(v));
  }
  void verdict(CheckResult v) { verdicts.push_back(std::move(v)); }
  void absorb(const FixtureReport& fixture) {
    for (const auto& c : fixture.checks) {
      CheckResult v = c;
      v.name = fixture.name + "/" + v.name;
      verdicts.push_back(std::move(v));
    }
  }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["metadata"] = {{"version", "0.1.0"},
                     {"command", command},
                     {"example", example},
                     {"seed", seed},
                     {"config", config_echo},
                     {"timestamp", nullptr}};
    if (const char* stamp = std::getenv("RMUQ_TIMESTAMP")) j["metadata"]["timestamp"] = stamp;
    j["scalars"] = nlohmann::ordered_json::array();
    for (const auto& s : scalars) {
      nlohmann::ordered_json e{{"name", s.name}, {"value", s.value}};
      if (s.has_target) {
        e["target"] = s.target;
        e["tolerance"] = s.tolerance;
        e["provenance"] = s.provenance;
      }
      j["scalars"].push_back(e);
    }
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : tables) {
      nlohmann::ordered_json e{{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}};
      j["tables"].push_back(e);
    }
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
      j["verdicts"].push_back(nlohmann::ordered_json{{"name", v.name},
                                                     {"pass", v.pass},
                                                     {"value", v.value},
                                                     {"target", v.target},
                                                     {"tolerance", v.tolerance},
                                                     {"detail", v.detail}});
    }
    return j;
  }
};

// Fixed-format float so CSV artifacts are byte-stable across runs.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void write_csv(const std::string& path, const ReportTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

inline void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

/// Minimal line-plot / heatmap SVG emitters; byte-stable, never load-bearing.
inline std::string svg_line_plot(const ReportTable& t, int width = 640, int height = 400) {
  if (t.columns.size() < 2 || t.rows.empty()) throw DomainError("svg_line_plot: need two columns");
  double xmin = t.rows[0][0], xmax = xmin, ymin = t.rows[0][1], ymax = ymin;
  for (const auto& r : t.rows) {
    xmin = std::min(xmin, r[0]);
    xmax = std::max(xmax, r[0]);
    ymin = std::min(ymin, r[1]);
    ymax = std::max(ymax, r[1]);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" + std::to_string(height) +
                    "\"><polyline fill=\"none\" stroke=\"black\" points=\"";
  for (const auto& r : t.rows) {
    const double px = (r[0] - xmin) / (xmax - xmin) * (width - 40) + 20;
    const double py = height - 20 - (r[1] - ymin) / (ymax - ymin) * (height - 40);
    svg += format_number(px) + "," + format_number(py) + " ";
  }
  svg += "\"/></svg>\n";
  return svg;
}

inline std::string svg_heatmap(const ReportTable& t, int cell = 4) {
  if (t.columns.size() < 3 || t.rows.empty()) throw DomainError("svg_heatmap: need three columns");
  std::map<double, int> xs, ys;
  for (const auto& r : t.rows) {
    xs.emplace(r[0], 0);
    ys.emplace(r[1], 0);
  }
  int i = 0;
  for (auto& kv : xs) kv.second = i++;
  i = 0;
  for (auto& kv : ys) kv.second = i++;
  double vmin = t.rows[0][2], vmax = vmin;
  for (const auto& r : t.rows) {
    vmin = std::min(vmin, r[2]);
    vmax = std::max(vmax, r[2]);
  }
  if (vmax == vmin) vmax = vmin + 1.0;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(static_cast<int>(xs.size()) * cell) + "\" height=\"" +
                    std::to_string(static_cast<int>(ys.size()) * cell) + "\">";
  for (const auto& r : t.rows) {
    const int shade = static_cast<int>(255.0 * (r[2] - vmin) / (vmax - vmin));
    svg += "<rect x=\"" + std::to_string(xs[r[0]] * cell) + "\" y=\"" +
           std::to_string(ys[r[1]] * cell) + "\" width=\"" + std::to_string(cell) +
           "\" height=\"" + std::to_string(cell) + "\" fill=\"rgb(" + std::to_string(shade) +
           "," + std::to_string(shade) + ",255)\"/>";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace rmuq
