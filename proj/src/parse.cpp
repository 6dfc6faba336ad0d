#include "tps/parse.hpp"

#include <cctype>
#include <vector>

namespace tps {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_bare_char(char c) {
  return !is_space(c) && c != '(' && c != ')' && c != ',' && c != '"';
}

class TreeLexer {
 public:
  explicit TreeLexer(std::string_view s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  std::string label() {
    skip_space();
    if (pos_ >= s_.size()) throw ParseError("expected label, found end of input", pos_);
    if (s_[pos_] == '"') return quoted();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_bare_char(s_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError(std::string("expected label, found '") + s_[pos_] + "'", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }

 private:
  std::string quoted() {
    const std::size_t open = pos_++;
    std::string out;
    while (pos_ < s_.size()) {
      const char c = s_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        out.push_back(s_[pos_++]);
      } else {
        out.push_back(c);
      }
    }
    throw ParseError("unterminated quoted label", open);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LabeledTree parse_tree(std::string_view text) {
  TreeLexer lex(text);
  if (lex.at_end()) throw ParseError("empty input", 0);

  TreeBuilder b;
  // Open nodes whose child lists are still being read.
  std::vector<std::pair<NodeId, std::size_t>> open;
  NodeId current = b.add_root(lex.label());
  for (;;) {
    const char c = lex.peek();
    if (c == '(') {
      open.emplace_back(current, lex.pos());
      lex.advance();
      current = b.add_child(current, lex.label());
      continue;
    }
    // `current` is complete; close parents as needed.
    for (;;) {
      const char d = lex.peek();
      if (d == ',') {
        if (open.empty()) throw ParseError("',' outside of a child list", lex.pos());
        lex.advance();
        current = b.add_child(open.back().first, lex.label());
        break;
      }
      if (d == ')') {
        if (open.empty()) throw ParseError("unbalanced ')'", lex.pos());
        lex.advance();
        open.pop_back();
        continue;
      }
      if (d == '\0' && lex.at_end()) {
        if (!open.empty()) throw ParseError("unbalanced '(': missing ')'", open.back().second);
        return std::move(b).build();
      }
      throw ParseError(std::string("unexpected '") + d + "'", lex.pos());
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t a = 0, e = s.size();
  while (a < e && is_space(s[a])) ++a;
  while (e > a && is_space(s[e - 1])) --e;
  return s.substr(a, e - a);
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string decode_entities(std::string_view s, std::size_t base) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos) throw ParseError("unterminated entity reference", base + i);
    const std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "amp") out.push_back('&');
    else if (name == "apos") out.push_back('\'');
    else if (name == "quot") out.push_back('"');
    else if (name.size() > 1 && name[0] == '#') {
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const std::string digits(name.substr(hex ? 2 : 1));
      std::size_t used = 0;
      unsigned long cp = 0;
      try {
        cp = std::stoul(digits, &used, hex ? 16 : 10);
      } catch (const std::exception&) {
        used = 0;
      }
      if (digits.empty() || used != digits.size() || cp > 0x10FFFF)
        throw ParseError("bad character reference", base + i);
      append_utf8(out, cp);
    } else {
      throw ParseError("unknown entity '&" + std::string(name) + ";'", base + i);
    }
    i = semi;
  }
  return out;
}

bool is_name_char(char c) {
  return !is_space(c) && c != '>' && c != '/' && c != '=' && c != '<' && c != '"' && c != '\'';
}

}  // namespace

LabeledTree parse_xml(std::string_view s) {
  TreeBuilder b;
  bool have_root = false;
  bool root_closed = false;
  std::vector<std::pair<NodeId, std::string>> open;
  std::string text;
  std::size_t text_start = 0;

  auto flush_text = [&] {
    const std::string_view run = trim(text);
    if (!run.empty()) {
      if (open.empty()) throw ParseError("text outside the root element", text_start);
      b.add_child(open.back().first, decode_entities(run, text_start));
    }
    text.clear();
  };

  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      if (text.empty()) text_start = i;
      text.push_back(s[i++]);
      continue;
    }
    const std::size_t lt = i;
    auto skip_past = [&](std::string_view terminator, const char* what) {
      const std::size_t end = s.find(terminator, i);
      if (end == std::string_view::npos) throw ParseError(std::string("unterminated ") + what, lt);
      i = end + terminator.size();
    };
    if (s.substr(i, 4) == "<!--") {
      skip_past("-->", "comment");
      continue;
    }
    if (s.substr(i, 9) == "<![CDATA[") {
      skip_past("]]>", "CDATA section");
      continue;
    }
    if (s.substr(i, 2) == "<?") {
      skip_past("?>", "processing instruction");
      continue;
    }
    if (s.substr(i, 2) == "<!") {
      // DOCTYPE; an internal subset in brackets may contain '>'.
      int depth = 0;
      for (i += 2; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        else if (s[i] == ']') --depth;
        else if (s[i] == '>' && depth <= 0) break;
      }
      if (i >= s.size()) throw ParseError("unterminated declaration", lt);
      ++i;
      continue;
    }

    flush_text();
    const bool closing = i + 1 < s.size() && s[i + 1] == '/';
    i += closing ? 2 : 1;
    const std::size_t name_start = i;
    while (i < s.size() && is_name_char(s[i])) ++i;
    const std::string name(s.substr(name_start, i - name_start));
    if (name.empty()) throw ParseError("expected tag name", name_start);

    // Skip attributes, honoring quoted values.
    bool self_closing = false;
    for (;;) {
      if (i >= s.size()) throw ParseError("unterminated tag <" + name, lt);
      const char c = s[i];
      if (c == '"' || c == '\'') {
        const std::size_t close = s.find(c, i + 1);
        if (close == std::string_view::npos) throw ParseError("unterminated attribute value", i);
        i = close + 1;
      } else if (c == '>') {
        ++i;
        break;
      } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '>') {
        if (closing) throw ParseError("malformed closing tag", lt);
        self_closing = true;
        i += 2;
        break;
      } else if (c == '<') {
        throw ParseError("'<' inside tag", i);
      } else {
        ++i;
      }
    }

    if (closing) {
      if (open.empty()) throw ParseError("unexpected closing tag </" + name + ">", lt);
      if (open.back().second != name)
        throw ParseError("mismatched closing tag </" + name + ">, expected </" + open.back().second + ">", lt);
      open.pop_back();
      if (open.empty()) root_closed = true;
      continue;
    }
    NodeId node;
    if (!have_root) {
      node = b.add_root(name);
      have_root = true;
    } else {
      if (open.empty() || root_closed) throw ParseError("multiple root elements", lt);
      node = b.add_child(open.back().first, name);
    }
    if (self_closing) {
      if (open.empty()) root_closed = true;
    } else {
      open.emplace_back(node, name);
    }
  }
  if (!trim(text).empty()) {
    if (open.empty()) throw ParseError("text outside the root element", text_start);
  }
  if (!open.empty()) throw ParseError("unclosed element <" + open.back().second + ">", s.size());
  if (!have_root) throw ParseError("empty document", 0);
  return std::move(b).build();
}

std::string quote_label(std::string_view label, std::string_view extra) {
  bool bare = !label.empty();
  for (char c : label)
    if (!is_bare_char(c) || extra.find(c) != std::string_view::npos) bare = false;
  if (bare) return std::string(label);
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_tree(const LabeledTree& tree) {
  std::string out;
  // Frames: node and index of the next child to emit.
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  out += quote_label(tree.text(tree.root()));
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = tree.children(v);
    if (next == kids.size()) {
      if (!kids.empty()) out.push_back(')');
      stack.pop_back();
      continue;
    }
    out.push_back(next == 0 ? '(' : ',');
    const NodeId c = kids[next++];
    out += quote_label(tree.text(c));
    stack.emplace_back(c, 0);
  }
  return out;
}

}  // namespace tps
