#pragma once

#include <string>
#include <vector>

#include "graspa/error.hpp"

namespace graspa::xml {

/// Minimal XML document tree for the benchmark file formats: elements,
/// attributes and text content. No namespaces, DTDs or CDATA — the schemas
/// in docs/formats.md stay inside this subset.
struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;  // concatenated character data of this element
  int line = 0;

  const std::string* find_attribute(const std::string& key) const {
    for (const auto& [k, v] : attributes)
      if (k == key) return &v;
    return nullptr;
  }

  const Node* find_child(const std::string& child_name) const {
    for (const auto& c : children)
      if (c.name == child_name) return &c;
    return nullptr;
  }

  std::vector<const Node*> children_named(const std::string& child_name) const {
    std::vector<const Node*> out;
    for (const auto& c : children)
      if (c.name == child_name) out.push_back(&c);
    return out;
  }
};

/// Parses a document and returns its root element. `origin` names the
/// source (file path) in error messages.
Node parse(const std::string& content, const std::string& origin);

Node parse_file(const std::string& path);

/// Serializes a tree with two-space indentation and a trailing newline.
/// Output is deterministic: attributes and children keep insertion order.
std::string write(const Node& root);

std::string escape_text(const std::string& raw);

}  // namespace graspa::xml
