#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "curv/graph.hpp"

namespace curv {

// Edge-list text format: one "u v" per line, '#' starts a comment, blank
// lines ignored, tokens are arbitrary non-whitespace strings. Vertex indices
// are assigned in order of first appearance.
inline Graph parse_edge_list(const std::string& text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& tok) {
    auto it = index.find(tok);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(tok);
    index.emplace(tok, id);
    return id;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b) || (ls >> extra)) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected exactly two vertex tokens");
    }
    if (a == b) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": self-loop at '" + a + "'");
    }
    int ia = intern(a);
    int ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  if (edges.empty()) {
    throw std::invalid_argument("empty edge list");
  }
  return Graph::build(std::move(labels), edges);  // rejects duplicate edges
}

inline std::string format_edge_list(const Graph& g,
                                    const std::string& header = "") {
  std::string out;
  if (!header.empty()) out += "# " + header + "\n";
  for (auto [u, v] : g.edges()) {
    out += g.label(u) + " " + g.label(v) + "\n";
  }
  return out;
}

}  // namespace curv
