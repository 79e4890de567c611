#include "pomfix/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include <fmt/format.h>

namespace pomfix {

struct Expression::Node {
  enum class Op { number, variable, add, sub, mul, div, pow, neg, call1, call2 };
  Op op = Op::number;
  double value = 0.0;
  std::size_t var = 0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(const double* v) const {
    switch (op) {
      case Op::number: return value;
      case Op::variable: return v[var];
      case Op::add: return a->eval(v) + b->eval(v);
      case Op::sub: return a->eval(v) - b->eval(v);
      case Op::mul: return a->eval(v) * b->eval(v);
      case Op::div: return a->eval(v) / b->eval(v);
      case Op::pow: return std::pow(a->eval(v), b->eval(v));
      case Op::neg: return -a->eval(v);
      case Op::call1: return fn1(a->eval(v));
      case Op::call2: return fn2(a->eval(v), b->eval(v));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

double f_sin(double x) { return std::sin(x); }
double f_cos(double x) { return std::cos(x); }
double f_tan(double x) { return std::tan(x); }
double f_exp(double x) { return std::exp(x); }
double f_log(double x) { return std::log(x); }
double f_sqrt(double x) { return std::sqrt(x); }
double f_abs(double x) { return std::fabs(x); }
double f_tanh(double x) { return std::tanh(x); }
double f_min(double x, double y) { return std::fmin(x, y); }
double f_max(double x, double y) { return std::fmax(x, y); }

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' unary)?
// atom   := number | name | name '(' expr (',' expr)? ')' | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) error(fmt::format("unexpected '{}'", s_[pos_]));
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw ExpressionError(fmt::format("expression '{}', column {}: {}", s_, pos_ + 1, msg), pos_ + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (eat('+')) left = make(Op::add, left, term());
      else if (eat('-')) left = make(Op::sub, left, term());
      else return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (eat('*')) left = make(Op::mul, left, unary());
      else if (eat('/')) left = make(Op::div, left, unary());
      else return left;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) error("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) error("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Expression::Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (eat('(')) return call(name, start);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
          auto n = std::make_shared<Expression::Node>();
          n->op = Op::variable;
          n->var = i;
          return n;
        }
      }
      auto n = std::make_shared<Expression::Node>();
      if (name == "pi") n->value = std::numbers::pi;
      else if (name == "e") n->value = std::numbers::e;
      else {
        pos_ = start;
        error(fmt::format("unknown variable '{}'", name));
      }
      return n;
    }
    error(fmt::format("unexpected '{}'", c));
  }

  NodePtr call(const std::string& name, std::size_t start) {
    static const std::pair<const char*, double (*)(double)> unary_fns[] = {
        {"sin", f_sin}, {"cos", f_cos}, {"tan", f_tan}, {"exp", f_exp},
        {"log", f_log}, {"sqrt", f_sqrt}, {"abs", f_abs}, {"tanh", f_tanh}};
    static const std::pair<const char*, double (*)(double, double)> binary_fns[] = {{"min", f_min},
                                                                                     {"max", f_max}};
    NodePtr first = expr();
    NodePtr second;
    if (eat(',')) second = expr();
    if (!eat(')')) error("missing ')' after function arguments");
    auto n = std::make_shared<Expression::Node>();
    n->a = first;
    if (!second) {
      for (const auto& [fname, fn] : unary_fns) {
        if (name == fname) {
          n->op = Op::call1;
          n->fn1 = fn;
          return n;
        }
      }
    } else {
      for (const auto& [fname, fn] : binary_fns) {
        if (name == fname) {
          n->op = Op::call2;
          n->fn2 = fn;
          n->b = second;
          return n;
        }
      }
    }
    pos_ = start;
    error(fmt::format("unknown function '{}' with {} argument(s)", name, second ? 2 : 1));
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::compile(const std::string& text, const std::vector<std::string>& variables) {
  Expression e;
  e.root_ = Parser(text, variables).parse();
  e.text_ = text;
  e.arity_ = variables.size();
  return e;
}

double Expression::operator()(const std::vector<double>& values) const {
  if (values.size() != arity_) throw PreconditionError("expression evaluated with the wrong number of values");
  return root_->eval(values.data());
}

double Expression::operator()(std::initializer_list<double> values) const {
  if (values.size() != arity_) throw PreconditionError("expression evaluated with the wrong number of values");
  return root_->eval(values.begin());
}

}  // namespace pomfix
