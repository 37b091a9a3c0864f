#pragma once

// Minimal directed-graph DOT reader/writer: one `digraph`, graph attributes,
// node statements and edge statements (`a -> b` chains allowed). Subgraphs,
// ports and HTML labels are not supported.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace trrg {

using DotAttributes = std::map<std::string, std::string>;

struct DotNode {
  std::string id;
  DotAttributes attributes;
};

struct DotEdge {
  std::string source;
  std::string target;
  DotAttributes attributes;
};

struct DotDocument {
  std::string name;
  DotAttributes graph_attributes;
  std::vector<DotNode> nodes;  // unique ids, declaration order
  std::vector<DotEdge> edges;
  std::vector<std::string> comments;  // emitted as leading `// ` lines

  const DotNode* find_node(std::string_view id) const;
};

// Throws SyntaxError with the 1-based line/column of the offending token.
// Repeated node statements merge their attributes; edge endpoints that were
// never declared become implicit nodes.
DotDocument parse_dot(std::string_view text);

// Writes the document in the given node/edge order with every id and value
// quoted, so the output is byte-stable for equal documents.
std::string write_dot(const DotDocument& document);

}  // namespace trrg
