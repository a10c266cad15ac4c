#include "polyincl/formula.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace polyincl {

struct Formula::Node {
  enum class Kind { Number, Variable, Negate, Binary, Call } kind;
  double value = 0;
  std::string name;  // variable or function
  char op = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;
using Kind = Formula::Node::Kind;

double call(const std::string& f, double x) {
  if (f == "sin") return std::sin(x);
  if (f == "cos") return std::cos(x);
  if (f == "tan") return std::tan(x);
  if (f == "asin") return std::asin(x);
  if (f == "acos") return std::acos(x);
  if (f == "atan") return std::atan(x);
  if (f == "sqrt") return std::sqrt(x);
  if (f == "exp") return std::exp(x);
  if (f == "log") return std::log(x);
  if (f == "abs") return std::abs(x);
  throw std::invalid_argument("unknown function " + f);
}

bool known_function(const std::string& f) {
  for (const char* g : {"sin", "cos", "tan", "asin", "acos", "atan", "sqrt", "exp", "log", "abs"})
    if (f == g) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula: " + what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = Kind::Binary;
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary('+', lhs, term());
      else if (accept('-')) lhs = binary('-', lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = binary('*', lhs, unary());
      else if (accept('/')) lhs = binary('/', lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Formula::Node>();
      n->kind = Kind::Negate;
      n->args = {unary()};
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("malformed number");
      }
      pos_ += used;
      auto n = std::make_shared<Formula::Node>();
      n->kind = Kind::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto n = std::make_shared<Formula::Node>();
      n->name = name;
      if (accept('(')) {
        if (!known_function(name)) fail("unknown function " + name);
        n->kind = Kind::Call;
        n->args = {expression()};
        if (!accept(')')) fail("expected ')'");
        return n;
      }
      n->kind = Kind::Variable;
      return n;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval(const Formula::Node& n, const std::map<std::string, double>& vars) {
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::Variable: {
      auto it = vars.find(n.name);
      if (it != vars.end()) return it->second;
      if (n.name == "pi") return std::numbers::pi;
      throw std::invalid_argument("formula: unbound variable " + n.name);
    }
    case Kind::Negate:
      return -eval(*n.args[0], vars);
    case Kind::Call:
      return call(n.name, eval(*n.args[0], vars));
    case Kind::Binary: {
      const double a = eval(*n.args[0], vars), b = eval(*n.args[1], vars);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
  }
  return 0;
}

}  // namespace

Formula Formula::parse(const std::string& text) {
  Formula f;
  f.text_ = text;
  f.root_ = Parser(text).parse();
  return f;
}

double Formula::evaluate(const std::map<std::string, double>& vars) const { return eval(*root_, vars); }

}  // namespace polyincl
