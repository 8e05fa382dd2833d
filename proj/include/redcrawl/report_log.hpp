#pragma once

// JSON-lines dump of monitor reports, one report per line.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "redcrawl/oracle.hpp"

namespace redcrawl {

inline nlohmann::json report_to_json(const MonitorReport& r) {
  nlohmann::json said = nlohmann::json::array();
  for (const auto& s : r.statements) said.push_back(to_string(s.said));
  return {{"target", r.target},
          {"true_color", to_string(r.true_color)},
          {"neighbors", r.neighbors},
          {"said", said}};
}

inline MonitorReport report_from_json(const nlohmann::json& j) {
  MonitorReport r;
  r.target = j.at("target").get<NodeId>();
  const auto color = parse_color(j.at("true_color").get<std::string>());
  if (!color) throw std::invalid_argument("report log: bad true_color");
  r.true_color = *color;
  r.neighbors = j.at("neighbors").get<std::vector<NodeId>>();
  const auto& said = j.at("said");
  if (said.size() != r.neighbors.size()) throw std::invalid_argument("report log: said/neighbors length mismatch");
  for (std::size_t i = 0; i < said.size(); ++i) {
    const auto c = parse_color(said[i].get<std::string>());
    if (!c) throw std::invalid_argument("report log: bad stated color");
    r.statements.push_back({r.target, r.neighbors[i], *c});
  }
  return r;
}

/// `extra` fields (run id, strategy, ...) are merged into every line.
inline void write_report_log(std::ostream& out, const std::vector<MonitorReport>& log,
                             const nlohmann::json& extra = nlohmann::json::object()) {
  for (std::size_t step = 0; step < log.size(); ++step) {
    auto j = extra;
    j["step"] = step;
    j.update(report_to_json(log[step]));
    out << j.dump() << '\n';
  }
}

inline std::vector<MonitorReport> read_report_log(std::istream& in) {
  std::vector<MonitorReport> log;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) log.push_back(report_from_json(nlohmann::json::parse(line)));
  return log;
}

}  // namespace redcrawl
