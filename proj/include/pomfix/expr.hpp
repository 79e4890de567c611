#pragma once

// A tiny arithmetic-expression language for kernels and maps:
// numbers, named variables, + - * / ^, unary minus, parentheses, the
// constants pi and e, and sin cos tan exp log sqrt abs tanh min max.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pomfix/core.hpp"

namespace pomfix {

class ExpressionError : public PreconditionError {
 public:
  ExpressionError(const std::string& what, std::size_t column)
      : PreconditionError(what), column(column) {}
  std::size_t column;
};

/// A compiled expression over a fixed variable list; evaluate with values in
/// the same order.
class Expression {
 public:
  struct Node;

  static Expression compile(const std::string& text, const std::vector<std::string>& variables);

  double operator()(const std::vector<double>& values) const;
  double operator()(std::initializer_list<double> values) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  std::size_t arity_ = 0;
};

}  // namespace pomfix
