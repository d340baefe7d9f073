#pragma once

// Expression DSL for metric components g_ij(x, y) and curve components x(t), y(t).
//
//   expr     ::= term { ("+" | "-") term }
//   term     ::= unary { ("*" | "/") unary }
//   unary    ::= "-" unary | power
//   power    ::= atom [ "^" exponent ]
//   exponent ::= "-" exponent | power
//   atom     ::= number | identifier | function "(" expr { "," expr } ")" | "(" expr ")"
//   function ::= sin | cos | tan | sinh | cosh | tanh | exp | log | sqrt | cbrt | abs | pow
//
// "^" is right-associative and binds tighter than unary minus, so -x^2 = -(x^2).
// Identifiers outside the context's variable set are parameters.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqaff/errors.hpp"
#include "eqaff/scalar.hpp"

namespace eqaff {

using ParamEnv = std::map<std::string, double>;

enum class TokenKind { number, identifier, op, left_paren, right_paren, comma };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;

  friend bool operator==(const Token&, const Token&) = default;
};

inline std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  const auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

  while (i < source.size()) {
    const char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < source.size() && is_digit(source[i + 1]))) {
      while (i < source.size() && is_digit(source[i])) ++i;
      if (i < source.size() && source[i] == '.') {
        ++i;
        while (i < source.size() && is_digit(source[i])) ++i;
      }
      if (i < source.size() && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < source.size() && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < source.size() && is_digit(source[j])) {
          i = j;
          while (i < source.size() && is_digit(source[i])) ++i;
        }
      }
      if (i < source.size() && (is_ident_char(source[i]) || source[i] == '.')) {
        throw LexError(i, "unexpected character '" + std::string(1, source[i]) + "' after number");
      }
      out.push_back({TokenKind::number, std::string(source.substr(start, i - start)), start});
    } else if (is_ident_start(c)) {
      while (i < source.size() && is_ident_char(source[i])) ++i;
      out.push_back({TokenKind::identifier, std::string(source.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      out.push_back({TokenKind::op, std::string(1, c), start});
      ++i;
    } else if (c == '(') {
      out.push_back({TokenKind::left_paren, "(", start});
      ++i;
    } else if (c == ')') {
      out.push_back({TokenKind::right_paren, ")", start});
      ++i;
    } else if (c == ',') {
      out.push_back({TokenKind::comma, ",", start});
      ++i;
    } else {
      throw LexError(start, "illegal character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

enum class NodeKind { constant, variable, parameter, negate, binary, call };
enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt, cbrt, abs, pow };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double value = 0.0;  // constant
  std::string name;    // variable, parameter
  BinaryOp op = BinaryOp::add;
  Function fn = Function::sin;
  std::vector<Expr> args;  // negate: 1, binary: 2, call: arity
};

inline constexpr std::array<std::pair<std::string_view, Function>, 12> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"tan", Function::tan},
    {"sinh", Function::sinh},
    {"cosh", Function::cosh},
    {"tanh", Function::tanh},
    {"exp", Function::exp},
    {"log", Function::log},
    {"sqrt", Function::sqrt},
    {"cbrt", Function::cbrt},
    {"abs", Function::abs},
    {"pow", Function::pow},
}};

inline std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions) {
    if (n == name) return f;
  }
  return std::nullopt;
}

inline std::string_view function_name(Function f) {
  for (const auto& [n, g] : kFunctions) {
    if (g == f) return n;
  }
  return "?";
}

inline int function_arity(Function f) { return f == Function::pow ? 2 : 1; }

using VariableSet = std::vector<std::string>;

inline VariableSet metric_variables() { return {"x", "y"}; }
inline VariableSet curve_variables() { return {"t"}; }

namespace detail {

inline Expr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::constant;
  n->value = v;
  return n;
}

inline Expr make_named(NodeKind kind, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->name = std::move(name);
  return n;
}

inline Expr make_negate(Expr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::negate;
  n->args = {std::move(a)};
  return n;
}

inline Expr make_binary(BinaryOp op, Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->args = {std::move(a), std::move(b)};
  return n;
}

inline Expr make_call(Function fn, std::vector<Expr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::call;
  n->fn = fn;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const VariableSet& variables)
      : tokens_(tokens), variables_(variables) {
    end_position_ = tokens.empty() ? 0 : tokens.back().position + tokens.back().text.size();
  }

  Expr parse_all() {
    Expr e = expression();
    if (!at_end()) throw SyntaxError(peek().position, "expected end of input");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  std::size_t here() const { return at_end() ? end_position_ : peek().position; }

  bool accept_op(char op) {
    if (!at_end() && peek().kind == TokenKind::op && peek().text[0] == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept(TokenKind kind) {
    if (!at_end() && peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(TokenKind kind, const char* what) {
    if (!accept(kind)) throw SyntaxError(here(), std::string("expected '") + what + "'");
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept_op('+')) {
        lhs = make_binary(BinaryOp::add, lhs, term());
      } else if (accept_op('-')) {
        lhs = make_binary(BinaryOp::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept_op('*')) {
        lhs = make_binary(BinaryOp::mul, lhs, unary());
      } else if (accept_op('/')) {
        lhs = make_binary(BinaryOp::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept_op('-')) return make_negate(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept_op('^')) return make_binary(BinaryOp::pow, base, exponent());
    return base;
  }

  Expr exponent() {
    if (accept_op('-')) return make_negate(exponent());
    return power();
  }

  Expr atom() {
    if (at_end()) throw SyntaxError(here(), "expected expression");
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::number: {
        ++pos_;
        double v = 0.0;
        const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (res.ec != std::errc() || !std::isfinite(v)) {
          throw SyntaxError(tok.position, "finite number literal");
        }
        return make_constant(v);
      }
      case TokenKind::identifier: {
        ++pos_;
        if (!at_end() && peek().kind == TokenKind::left_paren) return call(tok);
        if (lookup_function(tok.text)) {
          throw SyntaxError(here(), "expected '(' after function '" + tok.text + "'");
        }
        const bool is_var = std::find(variables_.begin(), variables_.end(), tok.text) != variables_.end();
        return make_named(is_var ? NodeKind::variable : NodeKind::parameter, tok.text);
      }
      case TokenKind::left_paren: {
        ++pos_;
        Expr inner = expression();
        expect(TokenKind::right_paren, ")");
        return inner;
      }
      default:
        throw SyntaxError(tok.position, "expected expression");
    }
  }

  Expr call(const Token& name) {
    const auto fn = lookup_function(name.text);
    if (!fn) throw SyntaxError(name.position, "unknown function '" + name.text + "'");
    expect(TokenKind::left_paren, "(");
    std::vector<Expr> args;
    args.push_back(expression());
    while (accept(TokenKind::comma)) args.push_back(expression());
    expect(TokenKind::right_paren, ")");
    if (static_cast<int>(args.size()) != function_arity(*fn)) {
      throw SyntaxError(name.position, "function '" + name.text + "' takes " +
                                           std::to_string(function_arity(*fn)) + " argument(s)");
    }
    return make_call(*fn, std::move(args));
  }

  const std::vector<Token>& tokens_;
  const VariableSet& variables_;
  std::size_t pos_ = 0;
  std::size_t end_position_ = 0;
};

}  // namespace detail

inline Expr parse(const std::vector<Token>& tokens, const VariableSet& variables) {
  return detail::Parser(tokens, variables).parse_all();
}

inline Expr parse(std::string_view source, const VariableSet& variables) {
  const auto tokens = tokenize(source);
  if (tokens.empty()) throw SyntaxError(0, "expected expression");
  return parse(tokens, variables);
}

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Fully parenthesized rendering; parse(to_string(e)) is structurally equal to e.
inline std::string to_string(const Expr& e) {
  switch (e->kind) {
    case NodeKind::constant:
      return format_number(e->value);
    case NodeKind::variable:
    case NodeKind::parameter:
      return e->name;
    case NodeKind::negate:
      return "(-" + to_string(e->args[0]) + ")";
    case NodeKind::binary: {
      const auto& l = e->args[0];
      const auto& r = e->args[1];
      switch (e->op) {
        case BinaryOp::add: return "(" + to_string(l) + " + " + to_string(r) + ")";
        case BinaryOp::sub: return "(" + to_string(l) + " - " + to_string(r) + ")";
        case BinaryOp::mul: return "(" + to_string(l) + " * " + to_string(r) + ")";
        case BinaryOp::div: return "(" + to_string(l) + " / " + to_string(r) + ")";
        case BinaryOp::pow: return "(" + to_string(l) + "^(" + to_string(r) + "))";
      }
      break;
    }
    case NodeKind::call: {
      std::string s(function_name(e->fn));
      s += '(';
      for (std::size_t i = 0; i < e->args.size(); ++i) s += (i ? ", " : "") + to_string(e->args[i]);
      return s + ')';
    }
  }
  return {};
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case NodeKind::constant:
      if (a->value != b->value) return false;
      break;
    case NodeKind::variable:
    case NodeKind::parameter:
      if (a->name != b->name) return false;
      break;
    case NodeKind::binary:
      if (a->op != b->op) return false;
      break;
    case NodeKind::call:
      if (a->fn != b->fn) return false;
      break;
    case NodeKind::negate:
      break;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

inline void collect_parameters(const Expr& e, std::set<std::string>& out) {
  if (e->kind == NodeKind::parameter) out.insert(e->name);
  for (const auto& a : e->args) collect_parameters(a, out);
}

inline bool depends_on_variables(const Expr& e) {
  if (e->kind == NodeKind::variable) return true;
  return std::any_of(e->args.begin(), e->args.end(), depends_on_variables);
}

template <class T>
using Bindings = std::vector<std::pair<std::string, T>>;

namespace detail {

template <class T>
T integer_power(const T& base, long n) {
  const long m = n < 0 ? -n : n;
  T acc = constant_like(base, 1.0);
  for (long i = 0; i < m; ++i) acc = acc * base;
  if (n < 0) return constant_like(base, 1.0) / acc;
  return acc;
}

template <class T>
class Evaluator {
 public:
  Evaluator(const Bindings<T>& vars, const ParamEnv& params)
      : vars_(vars), params_(params), proto_(vars.empty() ? T{} : vars.front().second) {}

  T eval(const Expr& e) const {
    switch (e->kind) {
      case NodeKind::constant:
        return constant_like(proto_, e->value);
      case NodeKind::variable: {
        for (const auto& [n, v] : vars_) {
          if (n == e->name) return v;
        }
        throw UnboundIdentifier(e->name);
      }
      case NodeKind::parameter:
        return constant_like(proto_, param(e->name));
      case NodeKind::negate:
        return -eval(e->args[0]);
      case NodeKind::binary:
        return binary(e);
      case NodeKind::call:
        return call(e);
    }
    throw DomainError("unknown expression node");
  }

 private:
  double param(const std::string& name) const {
    const auto it = params_.find(name);
    if (it == params_.end()) throw UnboundIdentifier(name);
    return it->second;
  }

  T power(const T& base, const Expr& exponent) const {
    if (!depends_on_variables(exponent)) {
      const double p = Evaluator<double>(Bindings<double>{}, params_).eval(exponent);
      if (p == std::trunc(p) && std::fabs(p) <= 1024.0) return integer_power(base, static_cast<long>(p));
      return pow_real(base, p);
    }
    return exp(eval(exponent) * log(base));
  }

  T binary(const Expr& e) const {
    if (e->op == BinaryOp::pow) return power(eval(e->args[0]), e->args[1]);
    const T a = eval(e->args[0]);
    const T b = eval(e->args[1]);
    switch (e->op) {
      case BinaryOp::add: return a + b;
      case BinaryOp::sub: return a - b;
      case BinaryOp::mul: return a * b;
      case BinaryOp::div: return a / b;
      case BinaryOp::pow: break;
    }
    throw DomainError("unknown operator");
  }

  T call(const Expr& e) const {
    if (e->fn == Function::pow) return power(eval(e->args[0]), e->args[1]);
    const T a = eval(e->args[0]);
    switch (e->fn) {
      case Function::sin: return sin(a);
      case Function::cos: return cos(a);
      case Function::tan: return tan(a);
      case Function::sinh: return sinh(a);
      case Function::cosh: return cosh(a);
      case Function::tanh: return tanh(a);
      case Function::exp: return exp(a);
      case Function::log: return log(a);
      case Function::sqrt: return sqrt(a);
      case Function::cbrt: return signed_cbrt(a);
      case Function::abs: return abs(a);
      case Function::pow: break;
    }
    throw DomainError("unknown function");
  }

  const Bindings<T>& vars_;
  const ParamEnv& params_;
  T proto_;
};

}  // namespace detail

template <class T>
T evaluate(const Expr& ast, const Bindings<T>& vars, const ParamEnv& params) {
  return detail::Evaluator<T>(vars, params).eval(ast);
}

}  // namespace eqaff
