#include "graspa/xml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace graspa::xml {
namespace {

class Parser {
public:
  Parser(const std::string& content, const std::string& origin)
      : s_(content), origin_(origin) {}

  Node parse_document() {
    skip_prolog();
    if (eof()) fail("document has no root element");
    Node root = parse_element();
    skip_misc();
    if (!eof()) fail("trailing content after root element");
    return root;
  }

private:
  const std::string& s_;
  const std::string& origin_;
  size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Syntax,
                origin_ + ":" + std::to_string(line_) + ": " + what);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  char get() {
    if (eof()) fail("unexpected end of input");
    char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  bool starts_with(const char* prefix) const {
    return s_.compare(pos_, std::char_traits<char>::length(prefix), prefix) == 0;
  }

  void advance(size_t n) {
    for (size_t i = 0; i < n; ++i) get();
  }

  void skip_whitespace() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  void skip_comment() {
    advance(4);  // "<!--"
    while (!starts_with("-->")) {
      if (eof()) fail("unterminated comment");
      get();
    }
    advance(3);
  }

  void skip_misc() {
    for (;;) {
      skip_whitespace();
      if (starts_with("<!--")) {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void skip_prolog() {
    skip_whitespace();
    if (starts_with("<?xml")) {
      while (!starts_with("?>")) {
        if (eof()) fail("unterminated XML declaration");
        get();
      }
      advance(2);
    }
    skip_misc();
  }

  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == ':';
  }

  std::string parse_name() {
    if (eof() || !is_name_char(peek())) fail("expected a name");
    std::string name;
    while (!eof() && is_name_char(peek())) name.push_back(get());
    return name;
  }

  std::string decode_entity() {
    // Caller consumed '&'.
    std::string entity;
    while (!eof() && peek() != ';') {
      entity.push_back(get());
      if (entity.size() > 8) fail("malformed entity reference");
    }
    if (eof()) fail("unterminated entity reference");
    get();  // ';'
    if (entity == "lt") return "<";
    if (entity == "gt") return ">";
    if (entity == "amp") return "&";
    if (entity == "quot") return "\"";
    if (entity == "apos") return "'";
    fail("unknown entity &" + entity + ";");
  }

  std::string parse_attribute_value() {
    char quote = get();
    if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
    std::string value;
    for (;;) {
      if (eof()) fail("unterminated attribute value");
      char c = get();
      if (c == quote) break;
      if (c == '<') fail("'<' not allowed in attribute value");
      if (c == '&') {
        value += decode_entity();
      } else {
        value.push_back(c);
      }
    }
    return value;
  }

  Node parse_element() {
    if (get() != '<') fail("expected '<'");
    Node node;
    node.line = line_;
    node.name = parse_name();

    for (;;) {
      skip_whitespace();
      if (eof()) fail("unterminated start tag <" + node.name + ">");
      if (peek() == '/') {
        get();
        if (get() != '>') fail("malformed self-closing tag");
        return node;
      }
      if (peek() == '>') {
        get();
        break;
      }
      std::string key = parse_name();
      if (node.find_attribute(key)) fail("duplicate attribute '" + key + "'");
      skip_whitespace();
      if (get() != '=') fail("expected '=' after attribute name");
      skip_whitespace();
      node.attributes.emplace_back(key, parse_attribute_value());
    }

    // Content until the matching end tag.
    for (;;) {
      if (eof()) fail("missing </" + node.name + ">");
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("</")) {
        advance(2);
        std::string closing = parse_name();
        if (closing != node.name)
          fail("mismatched end tag </" + closing + ">, expected </" + node.name + ">");
        skip_whitespace();
        if (get() != '>') fail("malformed end tag");
        return node;
      } else if (peek() == '<') {
        node.children.push_back(parse_element());
      } else {
        char c = get();
        if (c == '&') {
          node.text += decode_entity();
        } else {
          node.text.push_back(c);
        }
      }
    }
  }
};

void write_node(const Node& node, int depth, std::string& out) {
  const std::string indent(static_cast<size_t>(depth) * 2, ' ');
  out += indent;
  out += '<';
  out += node.name;
  for (const auto& [k, v] : node.attributes) {
    out += ' ';
    out += k;
    out += "=\"";
    out += escape_text(v);
    out += '"';
  }

  // Leading/trailing whitespace around text is not significant in any of
  // our schemas, so serialize trimmed.
  std::string text = node.text;
  size_t begin = text.find_first_not_of(" \t\r\n");
  size_t end = text.find_last_not_of(" \t\r\n");
  text = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);

  if (node.children.empty() && text.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (node.children.empty()) {
    out += escape_text(text);
    out += "</";
    out += node.name;
    out += ">\n";
    return;
  }
  out += '\n';
  if (!text.empty()) {
    out += std::string(static_cast<size_t>(depth + 1) * 2, ' ');
    out += escape_text(text);
    out += '\n';
  }
  for (const auto& child : node.children) write_node(child, depth + 1, out);
  out += indent;
  out += "</";
  out += node.name;
  out += ">\n";
}

}  // namespace

Node parse(const std::string& content, const std::string& origin) {
  return Parser(content, origin).parse_document();
}

Node parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string write(const Node& root) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_node(root, 0, out);
  return out;
}

std::string escape_text(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace graspa::xml
