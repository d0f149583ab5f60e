#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "balls.hpp"
#include "repr_tree.hpp"
#include "space.hpp"

namespace ultra {

using json = nlohmann::json;

namespace detail {

inline Dist entry_to_dist(const json& cell, size_t row, size_t col) {
  const std::string where =
      "matrix[" + std::to_string(row) + "][" + std::to_string(col) + "]";
  try {
    if (cell.is_string()) return Dist::parse(cell.get<std::string>());
    if (cell.is_number_integer()) {
      auto v = cell.get<long long>();
      if (v < 0) throw input_error("negative distance " + std::to_string(v));
      return Dist(Rat(BigInt(v)));
    }
    if (cell.is_number())
      throw input_error("binary float literal; write distances as strings");
    throw input_error("expected a numeric string");
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
}

}  // namespace detail

// {"points": ["p1", ...], "matrix": [["0", "3", ...], ...]}; entries are
// exact numeral strings (integer literals also accepted).
inline Space parse_space_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j.contains("matrix"))
    throw input_error("space document needs 'points' and 'matrix'");
  if (!j["points"].is_array() || j["points"].empty())
    throw input_error("'points' must be a nonempty array of names");
  std::vector<std::string> names;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw input_error("'points' entries must be strings");
    names.push_back(p.get<std::string>());
  }
  if (!j["matrix"].is_array() || j["matrix"].size() != names.size())
    throw input_error("'matrix' must have one row per point");
  std::vector<std::vector<Dist>> table;
  for (size_t i = 0; i < names.size(); ++i) {
    const auto& row = j["matrix"][i];
    if (!row.is_array() || row.size() != names.size())
      throw input_error("matrix[" + std::to_string(i) + "]: expected " +
                        std::to_string(names.size()) + " entries");
    std::vector<Dist> out;
    for (size_t k = 0; k < row.size(); ++k) out.push_back(detail::entry_to_dist(row[k], i, k));
    table.push_back(std::move(out));
  }
  return Space(std::move(names), table);
}

// Header row of point names, then a square body of numerals.
inline Space parse_space_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(std::string(detail::trim(cell)));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw input_error("CSV: empty document");
  const auto names = rows.front();
  const size_t n = names.size();
  if (rows.size() != n + 1)
    throw input_error("CSV: expected " + std::to_string(n) + " body rows, found " +
                      std::to_string(rows.size() - 1));
  std::vector<std::vector<Dist>> table;
  for (size_t i = 1; i <= n; ++i) {
    if (rows[i].size() != n)
      throw input_error("CSV row " + std::to_string(i + 1) + ": expected " + std::to_string(n) +
                        " columns, found " + std::to_string(rows[i].size()));
    std::vector<Dist> out;
    for (size_t k = 0; k < n; ++k) {
      try {
        out.push_back(Dist::parse(rows[i][k]));
      } catch (const input_error& e) {
        throw input_error("CSV row " + std::to_string(i + 1) + ", column " +
                          std::to_string(k + 1) + ": " + e.what());
      }
    }
    table.push_back(std::move(out));
  }
  return Space(names, table);
}

inline json space_to_json(const Space& s) {
  json j;
  j["points"] = s.points();
  json matrix = json::array();
  for (size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < s.size(); ++k) row.push_back(s.dist(i, k).str());
    matrix.push_back(std::move(row));
  }
  j["matrix"] = std::move(matrix);
  return j;
}

inline std::string emit_space_json(const Space& s) { return space_to_json(s).dump(2) + "\n"; }

inline std::string emit_space_csv(const Space& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s.point_name(i);
  }
  out += "\n";
  for (size_t i = 0; i < s.size(); ++i) {
    for (size_t k = 0; k < s.size(); ++k) {
      if (k) out += ",";
      out += s.dist(i, k).str();
    }
    out += "\n";
  }
  return out;
}

// {"label": "3", "children": [...]} with "point" on leaves.
inline json tree_to_json(const ReprTree& t, size_t id) {
  const ReprNode& nd = t.nodes[id];
  json j;
  j["label"] = nd.label.str();
  if (nd.leaf_point) {
    j["point"] = t.point_names[*nd.leaf_point];
  } else {
    json kids = json::array();
    for (size_t c : nd.children) kids.push_back(tree_to_json(t, c));
    j["children"] = std::move(kids);
  }
  return j;
}

inline std::string emit_tree_json(const ReprTree& t) {
  return tree_to_json(t, t.root).dump(2) + "\n";
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string member_list(const std::vector<size_t>& pts,
                               const std::vector<std::string>& names) {
  std::string out = "{";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += names[pts[i]];
  }
  return out + "}";
}

}  // namespace detail

// One DOT node per tree vertex annotated with its label and leaf set, one
// edge per parent-child pair.
inline std::string emit_tree_dot(const ReprTree& t) {
  std::string out = "digraph repr_tree {\n";
  for (size_t id = 0; id < t.nodes.size(); ++id) {
    const ReprNode& nd = t.nodes[id];
    out += "  n" + std::to_string(id) + " [label=\"" +
           detail::dot_escape(nd.label.str() + " " +
                              detail::member_list(nd.leaf_set, t.point_names)) +
           "\"];\n";
  }
  for (size_t id = 0; id < t.nodes.size(); ++id)
    for (size_t c : t.nodes[id].children)
      out += "  n" + std::to_string(id) + " -> n" + std::to_string(c) + ";\n";
  out += "}\n";
  return out;
}

inline json gamma_to_json(const GammaGraph& g, const std::vector<std::string>& names) {
  json j;
  json balls = json::array();
  for (const Ball& b : g.vertices) {
    json members = json::array();
    for (size_t p : b) members.push_back(names[p]);
    balls.push_back(std::move(members));
  }
  j["balls"] = std::move(balls);
  json edges = json::array();
  for (auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  j["root"] = g.root_vertex;
  j["vertex_count"] = g.vertices.size();
  j["edge_count"] = g.edges.size();
  return j;
}

inline std::string emit_gamma_json(const GammaGraph& g, const std::vector<std::string>& names) {
  return gamma_to_json(g, names).dump(2) + "\n";
}

inline std::string emit_gamma_dot(const GammaGraph& g, const std::vector<std::string>& names) {
  std::string out = "graph ball_graph {\n";
  for (size_t i = 0; i < g.vertices.size(); ++i)
    out += "  b" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(detail::member_list(g.vertices[i], names)) + "\"];\n";
  for (auto& [a, b] : g.edges)
    out += "  b" + std::to_string(a) + " -- b" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace ultra
