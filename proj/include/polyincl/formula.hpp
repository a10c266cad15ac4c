#pragma once

#include <map>
#include <memory>
#include <string>

namespace polyincl {

/// Arithmetic expression over named variables, e.g. "1 / (2 * cos(pi / (2 * m)))".
/// Grammar: numbers, identifiers, + - * / ^ (right associative), unary minus,
/// parentheses and the functions sin cos tan asin acos atan sqrt exp log abs.
/// `pi` is predefined.
class Formula {
 public:
  /// Throws std::invalid_argument with the offending position on a syntax error.
  static Formula parse(const std::string& text);

  /// Throws std::invalid_argument for a variable missing from `vars`.
  double evaluate(const std::map<std::string, double>& vars) const;

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace polyincl
