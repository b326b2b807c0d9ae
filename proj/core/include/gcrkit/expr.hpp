#pragma once

// Scalar expression language for profile functions and parametrization components.
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := ("-" | "+") unary | power
//   power      := primary [ "^" unary ]
//   primary    := number | identifier | call | "(" expression ")"
//   call       := function "(" expression { "," expression } ")"
//
// Functions: sin cos tan exp log sqrt abs atan (one argument), atan2 (two).
// The identifier `pi` is a built-in constant unless declared as a variable.

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcrkit/jet.hpp"

namespace gcrkit {

enum class Function { sin, cos, tan, exp, log, sqrt, abs, atan, atan2 };

const char* to_string(Function f) noexcept;
int arity(Function f) noexcept;

class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Constant {
    double value;
  };
  struct Variable {
    int slot;
  };
  struct Negate {
    NodePtr operand;
  };
  struct Binary {
    char op;  // one of + - * / ^
    NodePtr lhs;
    NodePtr rhs;
  };
  struct Call {
    Function fn;
    std::vector<NodePtr> args;
  };
  struct Node {
    std::variant<Constant, Variable, Negate, Binary, Call> data;
  };

  /// Parses `text` over the declared variable names. Throws ParseError.
  static Expr parse(std::string_view text, std::vector<std::string> variables);
  /// Constant expression with no variables.
  static Expr constant(double value);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const Node& root() const noexcept { return *root_; }
  const std::string& source() const noexcept { return source_; }

  /// Jet evaluation; env[i] binds variables()[i]. All jets must share dims and order.
  Jet eval(std::span<const Jet> env) const;
  /// As above, for expressions whose environment may be empty.
  Jet eval(std::span<const Jet> env, int dims, int order) const;
  Jet eval(const std::map<std::string, Jet>& env) const;

  double eval_real(std::span<const double> env) const;
  double eval_real(const std::map<std::string, double>& env) const;

  /// Canonical fully parenthesized text that reparses to an identical tree.
  std::string to_string() const;

  /// Variable names actually referenced by the tree.
  std::vector<std::string> referenced_variables() const;

  friend bool structurally_equal(const Expr& a, const Expr& b);

 private:
  Expr(NodePtr root, std::vector<std::string> variables, std::string source)
      : root_(std::move(root)), variables_(std::move(variables)), source_(std::move(source)) {}

  NodePtr root_;
  std::vector<std::string> variables_;
  std::string source_;
};

inline Expr parse_expr(std::string_view text, std::vector<std::string> variables) {
  return Expr::parse(text, std::move(variables));
}

inline Jet eval_expr(const Expr& e, const std::map<std::string, Jet>& env) { return e.eval(env); }

}  // namespace gcrkit
