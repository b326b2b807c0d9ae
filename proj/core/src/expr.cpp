#include "gcrkit/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "gcrkit/error.hpp"

namespace gcrkit {

const char* to_string(Function f) noexcept {
  switch (f) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::tan: return "tan";
    case Function::exp: return "exp";
    case Function::log: return "log";
    case Function::sqrt: return "sqrt";
    case Function::abs: return "abs";
    case Function::atan: return "atan";
    case Function::atan2: return "atan2";
  }
  return "?";
}

int arity(Function f) noexcept { return f == Function::atan2 ? 2 : 1; }

namespace {

std::optional<Function> function_by_name(std::string_view name) {
  static constexpr Function all[] = {Function::sin,  Function::cos, Function::tan,  Function::exp,  Function::log,
                                     Function::sqrt, Function::abs, Function::atan, Function::atan2};
  for (Function f : all) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { number, identifier, op, lparen, rparen, comma, end };
  Kind kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      if (i >= text_.size()) {
        out.push_back({Token::Kind::end, text_.size(), {}});
        return out;
      }
      const char c = text_[i];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        out.push_back(number(i));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        out.push_back({Token::Kind::identifier, i, text_.substr(i, j - i)});
        i = j;
        continue;
      }
      Token::Kind kind;
      switch (c) {
        case '+':
        case '-':
        case '*':
        case '/':
        case '^': kind = Token::Kind::op; break;
        case '(': kind = Token::Kind::lparen; break;
        case ')': kind = Token::Kind::rparen; break;
        case ',': kind = Token::Kind::comma; break;
        default:
          throw ParseError(ParseError::Kind::syntax, i, std::string("unexpected character '") + c + "' at offset " +
                                                            std::to_string(i));
      }
      out.push_back({kind, i, text_.substr(i, 1)});
      ++i;
    }
  }

 private:
  Token number(std::size_t& i) {
    const std::size_t start = i;
    auto digits = [&] {
      std::size_t n = 0;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        ++i;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      mantissa += digits();
    }
    if (mantissa == 0) {
      throw ParseError(ParseError::Kind::syntax, start, "malformed number at offset " + std::to_string(start));
    }
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t save = i;
      ++i;
      if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
      if (digits() == 0) i = save;  // "2e" is the number 2 followed by identifier e
    }
    Token t{Token::Kind::number, start, text_.substr(start, i - start)};
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(t.number)) {
      throw ParseError(ParseError::Kind::syntax, start, "malformed number at offset " + std::to_string(start));
    }
    return t;
  }

  std::string_view text_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr make(auto&& payload) { return std::make_shared<const Node>(Node{std::forward<decltype(payload)>(payload)}); }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<std::string>& vars) : tokens_(std::move(tokens)), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expression();
    if (peek().kind != Token::Kind::end) fail_unexpected(peek());
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  bool accept_op(char op) {
    if (peek().kind == Token::Kind::op && peek().text[0] == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_unexpected(const Token& t) const {
    if (t.kind == Token::Kind::end) {
      throw ParseError(ParseError::Kind::syntax, t.offset,
                       "unexpected end of input at offset " + std::to_string(t.offset));
    }
    throw ParseError(ParseError::Kind::syntax, t.offset,
                     "unexpected token '" + std::string(t.text) + "' at offset " + std::to_string(t.offset));
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      if (accept_op('+')) {
        lhs = make(Expr::Binary{'+', lhs, term()});
      } else if (accept_op('-')) {
        lhs = make(Expr::Binary{'-', lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (accept_op('*')) {
        lhs = make(Expr::Binary{'*', lhs, unary()});
      } else if (accept_op('/')) {
        lhs = make(Expr::Binary{'/', lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept_op('-')) return make(Expr::Negate{unary()});
    if (accept_op('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept_op('^')) return make(Expr::Binary{'^', base, unary()});
    return base;
  }

  NodePtr primary() {
    const Token& t = advance();
    switch (t.kind) {
      case Token::Kind::number: return make(Expr::Constant{t.number});
      case Token::Kind::lparen: {
        NodePtr inner = expression();
        if (peek().kind != Token::Kind::rparen) fail_unexpected(peek());
        advance();
        return inner;
      }
      case Token::Kind::identifier: return identifier(t);
      default: fail_unexpected(t);
    }
  }

  NodePtr identifier(const Token& t) {
    if (peek().kind == Token::Kind::lparen) {
      auto fn = function_by_name(t.text);
      if (!fn) {
        throw ParseError(ParseError::Kind::unknown_identifier, t.offset,
                         "unknown function '" + std::string(t.text) + "' at offset " + std::to_string(t.offset));
      }
      advance();
      std::vector<NodePtr> args;
      if (peek().kind != Token::Kind::rparen) {
        args.push_back(expression());
        while (peek().kind == Token::Kind::comma) {
          advance();
          args.push_back(expression());
        }
      }
      if (peek().kind != Token::Kind::rparen) fail_unexpected(peek());
      advance();
      if (static_cast<int>(args.size()) != arity(*fn)) {
        throw ParseError(ParseError::Kind::arity, t.offset,
                         "function '" + std::string(t.text) + "' expects " + std::to_string(arity(*fn)) +
                             " argument(s), got " + std::to_string(args.size()));
      }
      return make(Expr::Call{*fn, std::move(args)});
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == t.text) return make(Expr::Variable{static_cast<int>(i)});
    }
    if (t.text == "pi") return make(Expr::Constant{std::numbers::pi});
    throw ParseError(ParseError::Kind::unknown_identifier, t.offset,
                     "unknown identifier '" + std::string(t.text) + "' at offset " + std::to_string(t.offset));
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation, shared between doubles and jets so both follow one operation sequence.
// ---------------------------------------------------------------------------

struct RealOps {
  using T = double;
  T constant(double v) const { return v; }
  static double value(T x) { return x; }
  static bool is_constant(T) { return true; }
  static T divide(T a, T b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
  }
  static T pow_int(T x, int n) {
    if (n == 0) return 1.0;
    const int m = n > 0 ? n : -n;
    T acc = x;
    for (int i = 1; i < m; ++i) acc = acc * x;
    if (n < 0) {
      if (acc == 0.0) throw DomainError("negative power of zero");
      return 1.0 / acc;
    }
    return acc;
  }
  static T pow_real(T x, double e) {
    if (!(x > 0.0)) throw DomainError("real power requires a positive base, got " + std::to_string(x));
    return std::pow(x, e);
  }
  static T pow_general(T x, T e) { return pow_real(x, e); }
  static T call(Function f, T a, T b) {
    switch (f) {
      case Function::sin: return std::sin(a);
      case Function::cos: return std::cos(a);
      case Function::tan:
        if (std::cos(a) == 0.0) throw DomainError("tan evaluated where cos vanishes");
        return std::tan(a);
      case Function::exp: return std::exp(a);
      case Function::log:
        if (!(a > 0.0)) throw DomainError("log of non-positive value " + std::to_string(a));
        return std::log(a);
      case Function::sqrt:
        if (a < 0.0) throw DomainError("sqrt of negative value " + std::to_string(a));
        return std::sqrt(a);
      case Function::abs: return std::abs(a);
      case Function::atan: return std::atan(a);
      case Function::atan2:
        if (a == 0.0 && b == 0.0) throw DomainError("atan2 undefined at the origin");
        return std::atan2(a, b);
    }
    throw ArgumentError("unknown function");
  }
};

struct JetOps {
  using T = Jet;
  int dims;
  int order;
  T constant(double v) const { return Jet::constant(v, dims, order); }
  static double value(const T& x) { return x.value(); }
  static bool is_constant(const T& x) { return x.is_constant(); }
  static T divide(const T& a, const T& b) { return a / b; }
  static T pow_int(const T& x, int n) { return pow(x, n); }
  static T pow_real(const T& x, double e) { return pow(x, e); }
  static T pow_general(const T& x, const T& e) {
    if (!(x.value() > 0.0)) throw DomainError("power requires a positive base, got " + std::to_string(x.value()));
    return exp(e * log(x)).with_value(std::pow(x.value(), e.value()));
  }
  static T call(Function f, const T& a, const T& b) {
    switch (f) {
      case Function::sin: return sin(a);
      case Function::cos: return cos(a);
      case Function::tan: return tan(a);
      case Function::exp: return exp(a);
      case Function::log: return log(a);
      case Function::sqrt: return sqrt(a);
      case Function::abs: return abs(a);
      case Function::atan: return atan(a);
      case Function::atan2: return atan2(a, b);
    }
    throw ArgumentError("unknown function");
  }
};

template <class Ops>
typename Ops::T evaluate(const Node& node, std::span<const typename Ops::T> env, const Ops& ops) {
  using T = typename Ops::T;
  return std::visit(
      [&](const auto& n) -> T {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Constant>) {
          return ops.constant(n.value);
        } else if constexpr (std::is_same_v<N, Expr::Variable>) {
          return env[static_cast<std::size_t>(n.slot)];
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          return -evaluate(*n.operand, env, ops);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          T lhs = evaluate(*n.lhs, env, ops);
          T rhs = evaluate(*n.rhs, env, ops);
          switch (n.op) {
            case '+': return lhs + rhs;
            case '-': return lhs - rhs;
            case '*': return lhs * rhs;
            case '/': return Ops::divide(lhs, rhs);
            default: break;
          }
          if (Ops::is_constant(rhs)) {
            const double e = Ops::value(rhs);
            if (e == std::floor(e) && std::abs(e) <= 1024.0) return Ops::pow_int(lhs, static_cast<int>(e));
            return Ops::pow_real(lhs, e);
          }
          return Ops::pow_general(lhs, rhs);
        } else {
          T a = evaluate(*n.args[0], env, ops);
          if (n.args.size() == 2) return Ops::call(n.fn, a, evaluate(*n.args[1], env, ops));
          return Ops::call(n.fn, a, a);
        }
      },
      node.data);
}

void print(const Node& node, const std::vector<std::string>& vars, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Constant>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", n.value);
          out += buf;
        } else if constexpr (std::is_same_v<N, Expr::Variable>) {
          out += vars[static_cast<std::size_t>(n.slot)];
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          out += "(-";
          print(*n.operand, vars, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          out += '(';
          print(*n.lhs, vars, out);
          out += ' ';
          out += n.op;
          out += ' ';
          print(*n.rhs, vars, out);
          out += ')';
        } else {
          out += to_string(n.fn);
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out += ", ";
            print(*n.args[i], vars, out);
          }
          out += ')';
        }
      },
      node.data);
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.data);
        if constexpr (std::is_same_v<N, Expr::Constant>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<N, Expr::Variable>) {
          return x.slot == y.slot;
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          return equal_nodes(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          return x.op == y.op && equal_nodes(*x.lhs, *y.lhs) && equal_nodes(*x.rhs, *y.rhs);
        } else {
          if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!equal_nodes(*x.args[i], *y.args[i])) return false;
          }
          return true;
        }
      },
      a.data);
}

void collect_slots(const Node& node, std::set<int>& slots) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Variable>) {
          slots.insert(n.slot);
        } else if constexpr (std::is_same_v<N, Expr::Negate>) {
          collect_slots(*n.operand, slots);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          collect_slots(*n.lhs, slots);
          collect_slots(*n.rhs, slots);
        } else if constexpr (std::is_same_v<N, Expr::Call>) {
          for (const auto& a : n.args) collect_slots(*a, slots);
        }
      },
      node.data);
}

}  // namespace

Expr Expr::parse(std::string_view text, std::vector<std::string> variables) {
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_identifier(v)) throw ArgumentError("invalid variable name '" + v + "'");
    if (function_by_name(v)) throw ArgumentError("variable name '" + v + "' shadows a function");
    if (!seen.insert(v).second) throw ArgumentError("duplicate variable name '" + v + "'");
  }
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError(ParseError::Kind::syntax, 0, "empty expression");
  Parser parser(Lexer(text).run(), variables);
  NodePtr root = parser.run();
  return Expr(std::move(root), std::move(variables), std::string(text));
}

Expr Expr::constant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return Expr(make(Constant{value}), {}, buf);
}

Jet Expr::eval(std::span<const Jet> env) const {
  if (env.empty()) {
    if (!variables_.empty()) throw ArgumentError("missing binding for variable '" + variables_[0] + "'");
    throw ArgumentError("cannot infer jet shape from an empty environment");
  }
  return eval(env, env[0].dims(), env[0].order());
}

Jet Expr::eval(std::span<const Jet> env, int dims, int order) const {
  if (env.size() < variables_.size()) {
    throw ArgumentError("missing binding for variable '" + variables_[env.size()] + "'");
  }
  for (const Jet& j : env) {
    if (j.dims() != dims || j.order() != order) {
      throw ArgumentError("expression environment jets must share dimension and order");
    }
  }
  return evaluate(*root_, env, JetOps{dims, order});
}

Jet Expr::eval(const std::map<std::string, Jet>& env) const {
  std::vector<Jet> bound;
  bound.reserve(variables_.size());
  for (const auto& v : variables_) {
    auto it = env.find(v);
    if (it == env.end()) throw ArgumentError("missing binding for variable '" + v + "'");
    bound.push_back(it->second);
  }
  if (bound.empty()) {
    if (env.empty()) return eval(bound, 1, 0);
    return eval(bound, env.begin()->second.dims(), env.begin()->second.order());
  }
  return eval(bound);
}

double Expr::eval_real(std::span<const double> env) const {
  if (env.size() < variables_.size()) {
    throw ArgumentError("missing binding for variable '" + variables_[env.size()] + "'");
  }
  return evaluate(*root_, env, RealOps{});
}

double Expr::eval_real(const std::map<std::string, double>& env) const {
  std::vector<double> bound;
  bound.reserve(variables_.size());
  for (const auto& v : variables_) {
    auto it = env.find(v);
    if (it == env.end()) throw ArgumentError("missing binding for variable '" + v + "'");
    bound.push_back(it->second);
  }
  return eval_real(bound);
}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, variables_, out);
  return out;
}

std::vector<std::string> Expr::referenced_variables() const {
  std::set<int> slots;
  collect_slots(*root_, slots);
  std::vector<std::string> out;
  for (int s : slots) out.push_back(variables_[static_cast<std::size_t>(s)]);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return a.variables_ == b.variables_ && equal_nodes(*a.root_, *b.root_);
}

}  // namespace gcrkit
