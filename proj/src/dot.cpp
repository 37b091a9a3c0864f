#include "trrg/dot.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "trrg/errors.hpp"

namespace trrg {

const DotNode* DotDocument::find_node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const DotNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

namespace {

enum class TokenKind { Id, LBrace, RBrace, LBracket, RBracket, Equals, Semicolon, Comma, Arrow, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    const std::size_t line = line_;
    const std::size_t column = column_;
    if (pos_ >= text_.size()) return Token{TokenKind::End, "", line, column};
    const char c = text_[pos_];
    auto single = [&](TokenKind kind) {
      advance();
      return Token{kind, std::string(1, c), line, column};
    };
    switch (c) {
      case '{': return single(TokenKind::LBrace);
      case '}': return single(TokenKind::RBrace);
      case '[': return single(TokenKind::LBracket);
      case ']': return single(TokenKind::RBracket);
      case '=': return single(TokenKind::Equals);
      case ';': return single(TokenKind::Semicolon);
      case ',': return single(TokenKind::Comma);
      default: break;
    }
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      return Token{TokenKind::Arrow, "->", line, column};
    }
    if (c == '-' && peek(1) == '-') {
      throw SyntaxError("undirected edge '--' in a digraph", line, column);
    }
    if (c == '"') return quoted(line, column);
    if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' ||
        c == '-' || static_cast<unsigned char>(c) >= 0x80) {
      std::string id;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        const bool ok = std::isalnum(static_cast<unsigned char>(d)) != 0 || d == '_' || d == '.' ||
                        static_cast<unsigned char>(d) >= 0x80 || (d == '-' && peek(1) != '>');
        if (!ok) break;
        id += d;
        advance();
      }
      return Token{TokenKind::Id, id, line, column};
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '#' && column_ == 1) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t line = line_;
        const std::size_t column = column_;
        advance();
        advance();
        while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) throw SyntaxError("unterminated block comment", line, column);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token quoted(std::size_t line, std::size_t column) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) throw SyntaxError("unterminated string", line, column);
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\' && peek(1) == '"') {
        advance();
        advance();
        value += '"';
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {  // line continuation
        advance();
        advance();
        continue;
      }
      value += c;
      advance();
    }
    return Token{TokenKind::Id, value, line, column};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { current_ = lexer_.next(); }

  DotDocument parse() {
    Token head = expect(TokenKind::Id, "'digraph'");
    if (lower(head.text) == "strict") head = expect(TokenKind::Id, "'digraph'");
    if (lower(head.text) == "graph") throw SyntaxError("undirected graphs are not supported", head.line, head.column);
    if (lower(head.text) != "digraph") throw SyntaxError("expected 'digraph'", head.line, head.column);
    if (current_.kind == TokenKind::Id) doc_.name = take().text;
    expect(TokenKind::LBrace, "'{'");
    while (current_.kind != TokenKind::RBrace) {
      if (current_.kind == TokenKind::End) throw SyntaxError("missing '}'", current_.line, current_.column);
      statement();
    }
    take();
    if (current_.kind != TokenKind::End) {
      throw SyntaxError("trailing content after graph", current_.line, current_.column);
    }
    return std::move(doc_);
  }

 private:
  Token take() {
    Token t = std::move(current_);
    current_ = lexer_.next();
    return t;
  }

  Token expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      throw SyntaxError(std::string("expected ") + what +
                            (current_.kind == TokenKind::End ? " before end of input"
                                                             : ", found '" + current_.text + "'"),
                        current_.line, current_.column);
    }
    return take();
  }

  void statement() {
    if (current_.kind == TokenKind::Semicolon) {
      take();
      return;
    }
    const Token first = expect(TokenKind::Id, "a statement");
    const std::string keyword = lower(first.text);
    if (current_.kind == TokenKind::Equals) {  // graph attribute `key = value`
      take();
      const Token value = expect(TokenKind::Id, "an attribute value");
      doc_.graph_attributes[first.text] = value.text;
    } else if ((keyword == "graph" || keyword == "node" || keyword == "edge") &&
               current_.kind == TokenKind::LBracket) {
      DotAttributes attrs = attribute_list();
      if (keyword == "graph") {
        for (auto& [k, v] : attrs) doc_.graph_attributes[k] = v;
      } else {
        throw SyntaxError("default '" + keyword + "' attributes are not supported", first.line, first.column);
      }
    } else if (keyword == "subgraph") {
      throw SyntaxError("subgraphs are not supported", first.line, first.column);
    } else if (current_.kind == TokenKind::Arrow) {
      std::vector<std::string> chain{first.text};
      while (current_.kind == TokenKind::Arrow) {
        take();
        chain.push_back(expect(TokenKind::Id, "an edge target").text);
      }
      DotAttributes attrs;
      if (current_.kind == TokenKind::LBracket) attrs = attribute_list();
      for (const auto& id : chain) declare(id, {});
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        doc_.edges.push_back(DotEdge{chain[i], chain[i + 1], attrs});
      }
    } else {
      DotAttributes attrs;
      if (current_.kind == TokenKind::LBracket) attrs = attribute_list();
      declare(first.text, attrs);
    }
    if (current_.kind == TokenKind::Semicolon) take();
  }

  DotAttributes attribute_list() {
    DotAttributes attrs;
    while (current_.kind == TokenKind::LBracket) {
      take();
      while (current_.kind != TokenKind::RBracket) {
        const Token key = expect(TokenKind::Id, "an attribute name");
        expect(TokenKind::Equals, "'='");
        const Token value = expect(TokenKind::Id, "an attribute value");
        attrs[key.text] = value.text;
        if (current_.kind == TokenKind::Comma || current_.kind == TokenKind::Semicolon) take();
      }
      take();
    }
    return attrs;
  }

  void declare(const std::string& id, const DotAttributes& attrs) {
    for (auto& node : doc_.nodes) {
      if (node.id == id) {
        for (const auto& [k, v] : attrs) node.attributes[k] = v;
        return;
      }
    }
    doc_.nodes.push_back(DotNode{id, attrs});
  }

  Lexer lexer_;
  Token current_{TokenKind::End, "", 1, 1};
  DotDocument doc_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string attribute_text(const DotAttributes& attrs) {
  std::string out;
  for (const auto& [key, value] : attrs) {
    out += out.empty() ? " [" : ", ";
    out += key + "=" + quote(value);
  }
  if (!out.empty()) out += "]";
  return out;
}

}  // namespace

DotDocument parse_dot(std::string_view text) { return Parser(text).parse(); }

std::string write_dot(const DotDocument& document) {
  std::string out;
  for (const auto& comment : document.comments) {
    std::size_t start = 0;
    while (start <= comment.size()) {
      const auto nl = comment.find('\n', start);
      out += "// " + comment.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
      out += "\n";
      if (nl == std::string::npos) break;
      start = nl + 1;
    }
  }
  out += "digraph " + quote(document.name) + " {\n";
  for (const auto& [key, value] : document.graph_attributes) {
    out += "  " + key + "=" + quote(value) + ";\n";
  }
  for (const auto& node : document.nodes) {
    out += "  " + quote(node.id) + attribute_text(node.attributes) + ";\n";
  }
  for (const auto& edge : document.edges) {
    out += "  " + quote(edge.source) + " -> " + quote(edge.target) + attribute_text(edge.attributes) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace trrg
