#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tps/tree.hpp"

namespace tps {

/// Syntax error with the byte offset at which it was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Parenthesized form: `tree := label | label '(' tree (',' tree)* ')'`.
/// Labels are bare (no `(),"` or whitespace) or double-quoted with `\"`
/// and `\\` escapes. Whitespace between tokens is ignored.
LabeledTree parse_tree(std::string_view text);

/// Elements become nodes labeled by tag name; each non-blank text run
/// becomes a leaf labeled by the trimmed run. Attributes, comments,
/// processing instructions, CDATA and DOCTYPE are skipped.
LabeledTree parse_xml(std::string_view text);

/// Inverse of parse_tree; labels are quoted only when required.
std::string format_tree(const LabeledTree& tree);

/// Quotes `label` if it cannot be written bare. `extra` lists additional
/// characters that force quoting (e.g. "/" inside query paths).
std::string quote_label(std::string_view label, std::string_view extra = {});

}  // namespace tps
