#pragma once

// Edge file: one "<id> <id>" pair per line, '#' starts a comment.
// Node file: CSV with header "id,color,hierarchy"; the hierarchy column is
// optional and defaults to 1.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "redcrawl/graph.hpp"

namespace redcrawl {

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses both files. Node ids are numbered in node-file order. Self-loops
/// and duplicate edges are dropped and reported through `stats`.
inline WorldGraph load_graph(std::istream& edges, std::istream& nodes, const std::string& edge_name,
                             const std::string& node_name, BuildStats* stats = nullptr) {
  WorldGraph g;
  std::unordered_map<std::string, NodeId> ids;

  std::string line;
  std::size_t lineno = 0;
  int id_col = -1, color_col = -1, hier_col = -1;
  bool have_header = false;
  while (std::getline(nodes, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto cells = detail::split_csv(text);
    if (!have_header) {
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const auto key = to_lower(cells[i]);
        if (key == "id") id_col = i;
        else if (key == "color") color_col = i;
        else if (key == "hierarchy") hier_col = i;
      }
      if (id_col < 0 || color_col < 0) throw LoadError(node_name, lineno, "header must name columns id and color");
      have_header = true;
      continue;
    }
    const auto cell = [&](int col) -> std::string {
      return col >= 0 && col < static_cast<int>(cells.size()) ? cells[col] : std::string{};
    };
    const auto id = cell(id_col);
    if (id.empty()) throw LoadError(node_name, lineno, "empty node id");
    if (id.find_first_of(" \t") != std::string::npos)
      throw LoadError(node_name, lineno, "node id '" + id + "' contains whitespace");
    const auto color = parse_color(cell(color_col));
    if (!color) throw LoadError(node_name, lineno, "node " + id + ": color '" + cell(color_col) + "' is not red or blue");
    double hierarchy = 1.0;
    if (const auto h = cell(hier_col); !h.empty()) {
      const auto res = std::from_chars(h.data(), h.data() + h.size(), hierarchy);
      if (res.ec != std::errc{} || res.ptr != h.data() + h.size())
        throw LoadError(node_name, lineno, "node " + id + ": hierarchy '" + h + "' is not a number");
      if (!(hierarchy > 0.0) || !std::isfinite(hierarchy))
        throw LoadError(node_name, lineno, "node " + id + ": hierarchy must be positive");
    }
    if (!ids.emplace(id, static_cast<NodeId>(g.labels.size())).second)
      throw LoadError(node_name, lineno, "duplicate node id " + id);
    g.labels.push_back(id);
    g.color.push_back(*color);
    g.hierarchy.push_back(hierarchy);
  }
  if (!have_header) throw LoadError(node_name, lineno, "missing header line");

  std::vector<std::pair<NodeId, NodeId>> edge_list;
  lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string a, b, extra;
    if (!(in >> a)) continue;
    if (!(in >> b)) throw LoadError(edge_name, lineno, "expected two node ids");
    if (in >> extra) throw LoadError(edge_name, lineno, "expected two node ids, found more");
    const auto lookup = [&](const std::string& id) {
      const auto it = ids.find(id);
      if (it == ids.end()) throw LoadError(edge_name, lineno, "edge references unknown node " + id);
      return it->second;
    };
    edge_list.emplace_back(lookup(a), lookup(b));
  }

  g.adjacency = build_adjacency(g.labels.size(), edge_list, stats);
  return g;
}

inline WorldGraph load_graph(const std::filesystem::path& edge_file, const std::filesystem::path& node_file,
                             BuildStats* stats = nullptr) {
  std::ifstream edges(edge_file), nodes(node_file);
  if (!edges) throw LoadError(edge_file.string(), 0, "cannot open edge file");
  if (!nodes) throw LoadError(node_file.string(), 0, "cannot open node file");
  auto g = load_graph(edges, nodes, edge_file.string(), node_file.string(), stats);
  g.name = node_file.stem().string();
  return g;
}

inline void save_graph(const WorldGraph& g, std::ostream& edges, std::ostream& nodes) {
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.adjacency[u])
      if (u < v) edges << g.label(u) << ' ' << g.label(v) << '\n';
  nodes << "id,color,hierarchy\n";
  for (NodeId v = 0; v < g.node_count(); ++v)
    nodes << g.label(v) << ',' << to_string(g.color[v]) << ',' << detail::format_double(g.hierarchy[v]) << '\n';
}

inline void save_graph(const WorldGraph& g, const std::filesystem::path& edge_file,
                       const std::filesystem::path& node_file) {
  std::ofstream edges(edge_file), nodes(node_file);
  if (!edges) throw std::runtime_error("cannot write " + edge_file.string());
  if (!nodes) throw std::runtime_error("cannot write " + node_file.string());
  save_graph(g, edges, nodes);
}

}  // namespace redcrawl
